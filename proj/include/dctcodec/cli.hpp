#ifndef DCTCODEC_CLI_HPP
#define DCTCODEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dctcodec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the dctcodec executable. args excludes the program
/// name. Requested data goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dctcodec

#endif  // DCTCODEC_CLI_HPP
