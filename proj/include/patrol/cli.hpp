#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace patrol::cli {

// Runs one command. `args` excludes the program name. Returns 0 on success,
// 1 on validation, domain, or I/O errors (message on `err`), 2 on usage
// errors. Reports go to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patrol::cli
