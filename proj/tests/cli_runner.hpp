#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

struct CliRun {
  int exit_code = -1;
  std::string out;
};

/// Runs the built CLI with `args`; captures stdout, discards stderr.
inline CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(JBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string config_path(const std::string& name) { return std::string(JBOUND_CONFIG_DIR) + "/" + name; }
