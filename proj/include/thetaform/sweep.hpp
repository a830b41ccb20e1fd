#pragma once

// Batches of independent checks, run either by the serial reference loop or by
// an OpenMP loop. Both produce the same report: results land in a slot per
// task and the report orders them by name.

#include <functional>
#include <string>
#include <vector>

#include "thetaform/report.hpp"

namespace thetaform {

enum class Execution { serial, parallel };

struct Task {
    std::string name;
    /// Returns the check; its name defaults to the task name when left empty.
    std::function<Check()> run;
};

/// Exceptions thrown by a task become a failing check carrying the message.
Report run_tasks(const std::string& title, const std::vector<Task>& tasks, Execution exec);

Report run_tasks_serial(const std::string& title, const std::vector<Task>& tasks);
Report run_tasks_parallel(const std::string& title, const std::vector<Task>& tasks);

/// Threads the parallel loop would use.
int parallel_threads();

} // namespace thetaform
