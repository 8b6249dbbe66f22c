// Command-line front end. Subcommands: ingest, normalize, augment,
// silver-label, train, predict, evaluate, bench.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#ifndef NORDLID_CLI_H_
#define NORDLID_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace nordlid {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

int RunCli(int argc, char** argv);

}  // namespace nordlid

#endif  // NORDLID_CLI_H_
