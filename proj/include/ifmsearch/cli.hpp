// Copyright 2026 The ifmsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifmsearch::cli {

enum ExitCode : int {
    kSuccess = 0,
    kRuntimeError = 1,
    kUsageError = 2,
    kValidationFailed = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out` unless -o is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, '.' separator, independent of the C++ locale.
std::string format_number(double value);

/// `value` rounded to 12 significant digits (for JSON emission).
double round_to_printed(double value);

}  // namespace ifmsearch::cli
