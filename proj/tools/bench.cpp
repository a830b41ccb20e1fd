// Times the serial reference sweeps against the OpenMP sweeps and checks that
// both produce byte-identical reports.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thetaform/commands.hpp"

using namespace thetaform;

namespace {

struct Workload {
    std::string name;
    std::function<Report(Execution)> run;
};

double best_of(int reps, const std::function<Report()>& f, std::string& text) {
    double best = 0.0;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const Report r = f();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        best = i == 0 ? s : std::min(best, s);
        text = r.text() + r.json().dump();
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial versus OpenMP verification sweeps"};
    int reps = 3;
    int threads = 0;
    int max_degree = 6;
    int samples = 200;
    std::uint64_t seed = 1;
    app.add_option("--reps", reps, "Repetitions per measurement (best is reported)")->capture_default_str();
    app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->capture_default_str();
    app.add_option("--max-degree", max_degree, "Degree bound of the operator sweep")->capture_default_str();
    app.add_option("--samples", samples, "Samples for the homotopy and exactness sweeps")->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    CLI11_PARSE(app, argc, argv);
    if (threads > 0) {
        omp_set_num_threads(threads);
    }

    OperatorSweep ops;
    ops.max_degree = max_degree;
    ops.max_jet = max_degree;
    const std::vector<Workload> workloads{
        {"operators", [&](Execution e) { return cmd_verify_operators(ops, e); }},
        {"spectral", [&](Execution e) { return cmd_verify_spectral(seed, e); }},
        {"homotopy (2,3)", [&](Execution e) { return cmd_verify_homotopy(2, 3, samples, seed, e); }},
        {"homotopy (3,2)", [&](Execution e) { return cmd_verify_homotopy(3, 2, samples, seed, e); }},
        {"exactness", [&](Execution e) { return cmd_verify_exactness(samples, seed, e); }},
    };

    std::printf("threads: %d\n", parallel_threads());
    std::printf("%-16s %8s %12s %12s %9s %10s\n", "workload", "checks", "serial [s]", "openmp [s]", "speedup", "identical");
    bool all_identical = true;
    for (const Workload& w : workloads) {
        std::string serial_text;
        std::string parallel_text;
        const double ts = best_of(reps, [&] { return w.run(Execution::serial); }, serial_text);
        const double tp = best_of(reps, [&] { return w.run(Execution::parallel); }, parallel_text);
        const bool same = serial_text == parallel_text;
        all_identical = all_identical && same;
        const std::size_t checks = w.run(Execution::serial).checks().size();
        std::printf("%-16s %8zu %12.4f %12.4f %8.2fx %10s\n", w.name.c_str(), checks, ts, tp, tp > 0 ? ts / tp : 0.0,
                    same ? "yes" : "NO");
    }
    return all_identical ? 0 : 1;
}
