// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include "balanced/cli.hpp"

int main(int argc, char **argv) { return balanced::cli::run(argc, argv); }
