#ifndef H2NT_CLI_HPP
#define H2NT_CLI_HPP

namespace h2nt {

// Batch front end: transform / embed / eval / verify subcommands.
// Exit codes: 0 success, 1 assertion or evaluation failure, 2 usage/IO error.
int run_cli(int argc, const char* const* argv);

}  // namespace h2nt

#endif
