#ifndef CONDORCET_CLI_HPP
#define CONDORCET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace condorcet::cli {

/// Exit codes: 0 affirmative, 1 negative verdict, 2 usage or validation
/// error, 3 enumeration cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condorcet::cli

#endif  // CONDORCET_CLI_HPP
