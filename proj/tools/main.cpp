// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/cli.hpp"

int main(int argc, char** argv) { return ddlrd::cli_main(argc, argv); }
