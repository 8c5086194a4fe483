#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prodchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name. Regular output goes to out unless --out names a file;
/// diagnostics and the synopsis go to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prodchain::cli
