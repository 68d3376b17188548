/* Copyright 2026 The fslossy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fslossy/core.hpp"

namespace fslossy::io {

/// Binary sequence files start with "FSEQ", a version byte and alpha as a
/// big-endian u16, then one byte per symbol. Anything else is read as text.
inline constexpr char kSequenceMagic[4] = {'F', 'S', 'E', 'Q'};
inline constexpr std::uint8_t kSequenceVersion = 1;

enum class SequenceFormat { automatic, text, fseq, raw };
SequenceFormat parse_sequence_format(const std::string& name);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

/// Text sequences use one label per character. Without `labels` the alphabet
/// is the sorted set of characters present. Trailing newlines are dropped.
Sequence parse_text_sequence(std::string_view text, const std::string& labels = {});
Sequence read_sequence(const std::filesystem::path& path, SequenceFormat format = SequenceFormat::automatic,
                       const std::string& labels = {});

std::vector<std::uint8_t> fseq_bytes(const Sequence& x);
Sequence parse_fseq(const std::vector<std::uint8_t>& bytes);

/// Text when every label is a single character, FSEQ otherwise.
void write_sequence(const std::filesystem::path& path, const Sequence& x,
                    SequenceFormat format = SequenceFormat::automatic);

/// Distortion file: "alpha beta denom" then alpha rows of beta integer
/// numerators. '#' starts a comment.
DistortionModel read_distortion_file(const std::filesystem::path& path);
DistortionModel parse_distortion_text(const std::string& text);

/// "hamming", "absolute" or "file=PATH"; the named models use `alpha`.
DistortionModel distortion_from_spec(const std::string& spec, std::size_t alpha);

/// Default labels for alphabets built without any: a, b, c, ... then digits.
std::string default_labels(std::size_t alpha);

}  // namespace fslossy::io
