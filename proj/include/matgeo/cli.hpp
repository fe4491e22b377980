#pragma once

#include <string>
#include <vector>

namespace matgeo {

// args excludes the program name; returns the process exit code (0 pass, 1 fail, 2 usage or format error)
int run_command(const std::vector<std::string>& args);

// --workers beats MATGEO_WORKERS; 0 leaves the OpenMP default
int resolve_workers(int flag_value, const char* env_value);

}  // namespace matgeo
