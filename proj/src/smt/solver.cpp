#include "geocheck/smt/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "geocheck/error.hpp"

namespace geocheck {

std::string_view verdict_name(SolverVerdict::Kind kind) {
  switch (kind) {
    case SolverVerdict::Kind::Unsat: return "unsat";
    case SolverVerdict::Kind::Sat: return "sat";
    case SolverVerdict::Kind::Unknown: return "unknown";
    case SolverVerdict::Kind::Timeout: return "timeout";
    case SolverVerdict::Kind::Error: return "error";
  }
  return "?";
}

namespace {

bool executable(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

std::string search_path(const std::string& name) {
  if (name.find('/') != std::string::npos) return executable(name) ? name : std::string();
  const char* path = std::getenv("PATH");
  if (!path) return {};
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    auto candidate = std::filesystem::path(dir) / name;
    if (executable(candidate)) return candidate.string();
  }
  return {};
}

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe() {
    if (::pipe2(fd, O_CLOEXEC) != 0) throw Error(ErrorCode::Io, std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    for (int f : fd)
      if (f >= 0) ::close(f);
  }
  void close_end(int i) {
    if (fd[i] >= 0) ::close(fd[i]);
    fd[i] = -1;
  }
};

}  // namespace

std::string resolve_solver(const SolverConfig& config) {
  std::string requested = config.path;
  if (requested.empty()) {
    if (const char* env = std::getenv("GEOCHECK_SOLVER"); env && *env) requested = env;
  }
  if (!requested.empty()) {
    auto found = search_path(requested);
    if (found.empty()) throw Error(ErrorCode::SolverNotFound, "solver '" + requested + "' not found or not executable");
    return found;
  }
  for (const char* name : {"cvc5", "z3"}) {
    auto found = search_path(name);
    if (!found.empty()) return found;
  }
  throw Error(ErrorCode::SolverNotFound, "no SMT solver configured and neither cvc5 nor z3 is on PATH");
}

std::vector<std::string> default_solver_args(const std::string& resolved_path) {
  std::string base = std::filesystem::path(resolved_path).filename().string();
  if (base.find("z3") != std::string::npos) return {"-in", "-smt2"};
  if (base.find("cvc5") != std::string::npos || base.find("cvc4") != std::string::npos)
    return {"--lang=smt2", "--quiet"};
  return {};
}

SolverVerdict run_solver(const std::string& query, const SolverConfig& config) {
  const std::string exe = resolve_solver(config);
  static const bool sigpipe_ignored = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;
  std::vector<std::string> args = config.args.empty() ? default_solver_args(exe) : config.args;

  Pipe in, out;
  auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::Io, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in.fd[0], STDIN_FILENO);
    ::dup2(out.fd[1], STDOUT_FILENO);
    ::dup2(out.fd[1], STDERR_FILENO);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(exe.c_str()));
    for (auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execv(exe.c_str(), argv.data());
    ::_exit(127);
  }
  in.close_end(0);
  out.close_end(1);
  ::fcntl(in.fd[1], F_SETFL, O_NONBLOCK);

  const auto deadline = start + std::chrono::duration<double>(config.timeout_secs);
  std::string output;
  std::size_t written = 0;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    pollfd fds[2];
    int n = 0;
    if (in.fd[1] >= 0) fds[n++] = {in.fd[1], POLLOUT, 0};
    fds[n++] = {out.fd[0], POLLIN, 0};
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count()) + 1;
    int r = ::poll(fds, static_cast<nfds_t>(n), wait_ms);
    if (r < 0) {
      if (errno == EINTR) continue;
      break;
    }
    bool eof = false;
    for (int i = 0; i < n; ++i) {
      if (fds[i].fd == in.fd[1] && (fds[i].revents & (POLLOUT | POLLERR | POLLHUP))) {
        if (fds[i].revents & (POLLERR | POLLHUP)) {
          in.close_end(1);
          continue;
        }
        ssize_t w = ::write(in.fd[1], query.data() + written, query.size() - written);
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN && errno != EINTR) in.close_end(1);
        if (written >= query.size()) in.close_end(1);
      } else if (fds[i].fd == out.fd[0] && (fds[i].revents & (POLLIN | POLLHUP | POLLERR))) {
        ssize_t got = ::read(out.fd[0], buf, sizeof buf);
        if (got > 0)
          output.append(buf, static_cast<std::size_t>(got));
        else if (got == 0 || (errno != EAGAIN && errno != EINTR))
          eof = true;
      }
    }
    if (eof) break;
  }
  int status = 0;
  if (timed_out) {
    ::kill(pid, SIGKILL);
  }
  ::waitpid(pid, &status, 0);
  SolverVerdict v;
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (timed_out) {
    v.kind = SolverVerdict::Kind::Timeout;
    return v;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && output.empty())
    throw Error(ErrorCode::SolverNotFound, "could not execute " + exe);

  std::istringstream lines(output);
  std::string line;
  std::string rest;
  bool have_status = false;
  while (std::getline(lines, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("(error", 0) == 0) {
      v.kind = SolverVerdict::Kind::Error;
      v.detail = line;
      return v;
    }
    if (!have_status) {
      if (line == "unsat")
        v.kind = SolverVerdict::Kind::Unsat;
      else if (line == "sat")
        v.kind = SolverVerdict::Kind::Sat;
      else if (line == "unknown" || line == "timeout")
        v.kind = line == "unknown" ? SolverVerdict::Kind::Unknown : SolverVerdict::Kind::Timeout;
      else
        throw Error(ErrorCode::ProtocolError, "unexpected solver output: " + line);
      have_status = true;
    } else {
      rest += line + "\n";
    }
  }
  if (!have_status) throw Error(ErrorCode::ProtocolError, "solver produced no verdict");
  v.detail = rest;
  return v;
}

}  // namespace geocheck
