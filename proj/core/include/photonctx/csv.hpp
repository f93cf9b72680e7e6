// Copyright 2026 The photonctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// Minimal CSV reading and writing (RFC 4180 style).
///
/// Fields containing commas, quotes, or newlines are quoted on output, with
/// embedded quotes doubled. The reader accepts LF and CRLF line endings and
/// tolerates a missing final newline. Numeric fields are formatted with 12
/// significant digits so that a write/read cycle reproduces doubles exactly
/// for the value ranges this project produces; non-finite values are written
/// as `inf`, `-inf`, and `nan`.

#ifndef PHOTONCTX_CSV_HPP
#define PHOTONCTX_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace photonctx {

/// One parsed CSV record.
using CsvRow = std::vector<std::string>;

/// Escapes and joins `fields` into a single CSV record (no trailing newline).
std::string csv_join(const std::vector<std::string> &fields);

/// Parses CSV `text` into rows of fields. Throws ConsistencyError on an
/// unterminated quoted field.
std::vector<CsvRow> csv_parse(std::string_view text);

/// Formats `v` with 12 significant digits (`%.12g`); non-finite values become
/// `inf`, `-inf`, or `nan`.
std::string format_double(double v);

/// Parses a double previously written by format_double. Throws
/// ConsistencyError if `s` is not a complete number or non-finite token.
double parse_double_field(std::string_view s);

} // namespace photonctx

#endif // PHOTONCTX_CSV_HPP
