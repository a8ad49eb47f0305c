#pragma once

// Subprocess harness: runs the installed CLI binary and captures its exit
// code, for the grammar/exit-code/determinism integration tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef CONFDYN_CLI_PATH
#error "CONFDYN_CLI_PATH must be defined by the build"
#endif

namespace confdyn_test {

namespace fs = std::filesystem;

inline fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("confdyn_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs `confdyn <args>`, discarding stdout/stderr; returns the exit code.
inline int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CONFDYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace confdyn_test
