// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_CLI_HPP
#define DDLRD_CLI_HPP

namespace ddlrd {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_study_failure = 3;

/// Entry point of the `ddlrd` command line tool.
int cli_main(int argc, char** argv);

}  // namespace ddlrd

#endif
