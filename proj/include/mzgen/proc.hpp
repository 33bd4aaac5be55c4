// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace mzgen {

struct ProcessResult {
  int exit_code = -1;     // -signal when killed by a signal
  std::string out;
  std::string err;
  bool timed_out = false;
  bool spawn_failed = false;  // executable missing or not runnable
};

/// Runs argv[0] with the given arguments, capturing stdout and stderr.
/// The child is killed once timeout_ms elapses and timed_out is set.
/// timeout_ms <= 0 means no limit.
ProcessResult run_process(const std::vector<std::string>& argv, int timeout_ms);

}  // namespace mzgen
