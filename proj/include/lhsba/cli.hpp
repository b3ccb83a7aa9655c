#ifndef LHSBA_CLI_HPP
#define LHSBA_CLI_HPP

namespace lhsba {

// Subcommands: attack, bench, sample, oracle-serve.
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.
int cli_main(int argc, char** argv);

}  // namespace lhsba

#endif  // LHSBA_CLI_HPP
