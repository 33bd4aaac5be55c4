// SPDX-License-Identifier: Apache-2.0

#include "mzgen/proc.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

namespace mzgen {

namespace {

void drain(int fd, std::string& sink) {
  char buf[4096];
  while (true) {
    ssize_t n = read(fd, buf, sizeof(buf));
    if (n <= 0) break;
    sink.append(buf, static_cast<std::size_t>(n));
  }
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, int timeout_ms) {
  ProcessResult result;
  if (argv.empty()) {
    result.spawn_failed = true;
    return result;
  }

  int out_pipe[2];
  int err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    result.spawn_failed = true;
    return result;
  }

  pid_t pid = fork();
  if (pid < 0) {
    result.spawn_failed = true;
    return result;
  }

  if (pid == 0) {
    setpgid(0, 0);  // fresh process group, so a timeout kill reaps grandchildren
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);  // exec failed: conventional "command not found" status
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(timeout_ms > 0 ? timeout_ms : 0);
  std::chrono::steady_clock::time_point drain_deadline;
  bool open_out = true, open_err = true;
  bool killed = false;

  while (open_out || open_err) {
    pollfd fds[2];
    nfds_t nfds = 0;
    if (open_out) fds[nfds++] = pollfd{out_pipe[0], POLLIN, 0};
    if (open_err) fds[nfds++] = pollfd{err_pipe[0], POLLIN, 0};

    int wait_ms = 200;
    if (timeout_ms > 0) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                      deadline - std::chrono::steady_clock::now())
                      .count();
      if (left <= 0) {
        if (!killed) {
          // Whole group: the direct child may have children of its own that
          // would otherwise hold the pipes open.
          if (kill(-pid, SIGKILL) != 0) kill(pid, SIGKILL);
          killed = true;
          result.timed_out = true;
          drain_deadline = std::chrono::steady_clock::now() +
                           std::chrono::milliseconds(500);
        }
        if (std::chrono::steady_clock::now() > drain_deadline) break;
        left = 50;  // keep draining briefly until the pipes close
      }
      wait_ms = static_cast<int>(std::min<long long>(left, 200));
    }

    int ready = poll(fds, nfds, wait_ms);
    if (ready < 0 && errno != EINTR) break;

    for (nfds_t i = 0; i < nfds; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP))) continue;
      bool is_out = fds[i].fd == out_pipe[0];
      std::string& sink = is_out ? result.out : result.err;
      char buf[4096];
      ssize_t n;
      while ((n = read(fds[i].fd, buf, sizeof(buf))) > 0)
        sink.append(buf, static_cast<std::size_t>(n));
      if (n == 0 || (n < 0 && errno != EAGAIN && errno != EINTR)) {
        close(fds[i].fd);
        (is_out ? open_out : open_err) = false;
      }
    }
  }

  if (open_out) {
    drain(out_pipe[0], result.out);
    close(out_pipe[0]);
  }
  if (open_err) {
    drain(err_pipe[0], result.err);
    close(err_pipe[0]);
  }

  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
    if (result.exit_code == 127 && result.out.empty() && result.err.empty())
      result.spawn_failed = true;
  } else if (WIFSIGNALED(status)) {
    result.exit_code = -WTERMSIG(status);
  }
  return result;
}

}  // namespace mzgen
