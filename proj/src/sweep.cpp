#include "thetaform/sweep.hpp"

#include <omp.h>

#include <exception>

namespace thetaform {

namespace {

Check run_one(const Task& task) {
    Check c = timed([&task]() -> Check {
        try {
            return task.run();
        } catch (const std::exception& e) {
            Check failed;
            failed.pass = false;
            failed.residual = "error";
            failed.detail = std::string("error: ") + e.what();
            return failed;
        }
    });
    if (c.name.empty()) {
        c.name = task.name;
    }
    return c;
}

Report collect(const std::string& title, std::vector<Check>& results) {
    Report out(title);
    for (Check& c : results) {
        out.add(std::move(c));
    }
    return out;
}

} // namespace

Report run_tasks_serial(const std::string& title, const std::vector<Task>& tasks) {
    std::vector<Check> results(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        results[i] = run_one(tasks[i]);
    }
    return collect(title, results);
}

Report run_tasks_parallel(const std::string& title, const std::vector<Task>& tasks) {
    std::vector<Check> results(tasks.size());
    const auto n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        results[static_cast<std::size_t>(i)] = run_one(tasks[static_cast<std::size_t>(i)]);
    }
    return collect(title, results);
}

Report run_tasks(const std::string& title, const std::vector<Task>& tasks, Execution exec) {
    return exec == Execution::serial ? run_tasks_serial(title, tasks) : run_tasks_parallel(title, tasks);
}

int parallel_threads() {
    return omp_get_max_threads();
}

} // namespace thetaform
