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

#include "fslossy/io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace fslossy::io {

SequenceFormat parse_sequence_format(const std::string& name) {
  if (name == "auto") return SequenceFormat::automatic;
  if (name == "text") return SequenceFormat::text;
  if (name == "fseq") return SequenceFormat::fseq;
  if (name == "raw") return SequenceFormat::raw;
  throw UsageError("unknown sequence format '" + name + "'");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("write failed: " + path.string());
}

std::string default_labels(std::size_t alpha) {
  static const std::string pool = "abcdefghijklmnopqrstuvwxyz0123456789";
  require(alpha >= 1 && alpha <= pool.size(), "default labels cover alphabets of size 1..36");
  return pool.substr(0, alpha);
}

Sequence parse_text_sequence(std::string_view text, const std::string& labels) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  std::string alphabet = labels;
  if (alphabet.empty()) {
    std::set<char> seen(text.begin(), text.end());
    alphabet.assign(seen.begin(), seen.end());
    if (alphabet.empty()) alphabet = "a";
  }
  return Sequence::from_labels(alphabet, text);
}

std::vector<std::uint8_t> fseq_bytes(const Sequence& x) {
  const std::size_t alpha = x.alphabet().size();
  require(alpha <= 256, "FSEQ stores one byte per symbol (alpha <= 256)");
  std::vector<std::uint8_t> out(kSequenceMagic, kSequenceMagic + 4);
  out.push_back(kSequenceVersion);
  out.push_back(static_cast<std::uint8_t>(alpha >> 8));
  out.push_back(static_cast<std::uint8_t>(alpha));
  for (Symbol s : x.symbols()) out.push_back(static_cast<std::uint8_t>(s));
  return out;
}

Sequence parse_fseq(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 7 || !std::equal(kSequenceMagic, kSequenceMagic + 4, bytes.begin())) {
    throw FormatError("not an FSEQ file");
  }
  if (bytes[4] != kSequenceVersion) throw FormatError("unsupported FSEQ version");
  const std::size_t alpha = (std::size_t{bytes[5]} << 8) | bytes[6];
  if (alpha == 0 || alpha > 256) throw FormatError("FSEQ alphabet size out of range");
  std::vector<Symbol> symbols(bytes.begin() + 7, bytes.end());
  for (Symbol s : symbols) {
    if (s >= alpha) throw FormatError("FSEQ symbol out of range");
  }
  return Sequence(Alphabet(alpha), std::move(symbols));
}

namespace {

bool has_magic(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 4 && std::equal(kSequenceMagic, kSequenceMagic + 4, bytes.begin());
}

}  // namespace

Sequence read_sequence(const std::filesystem::path& path, SequenceFormat format,
                       const std::string& labels) {
  auto bytes = read_file(path);
  if (format == SequenceFormat::automatic) format = has_magic(bytes) ? SequenceFormat::fseq : SequenceFormat::text;
  switch (format) {
    case SequenceFormat::fseq:
      return parse_fseq(bytes);
    case SequenceFormat::raw:
      return Sequence(Alphabet(256), std::vector<Symbol>(bytes.begin(), bytes.end()));
    default:
      return parse_text_sequence(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                                 labels);
  }
}

void write_sequence(const std::filesystem::path& path, const Sequence& x, SequenceFormat format) {
  const auto& labels = x.alphabet().labels();
  const bool textual = x.alphabet().has_labels() &&
                       std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.size() == 1; });
  if (format == SequenceFormat::automatic) format = textual ? SequenceFormat::text : SequenceFormat::fseq;
  if (format == SequenceFormat::text) {
    std::string text;
    if (textual) {
      text = x.to_string();
    } else {
      const std::string pool = default_labels(x.alphabet().size());
      for (Symbol s : x.symbols()) text.push_back(pool[s]);
    }
    text.push_back('\n');
    write_file(path, std::vector<std::uint8_t>(text.begin(), text.end()));
  } else if (format == SequenceFormat::raw) {
    require(x.alphabet().size() <= 256, "raw output stores one byte per symbol");
    std::vector<std::uint8_t> bytes(x.symbols().begin(), x.symbols().end());
    write_file(path, bytes);
  } else {
    write_file(path, fseq_bytes(x));
  }
}

DistortionModel parse_distortion_text(const std::string& text) {
  std::istringstream lines(text);
  std::string clean;
  for (std::string line; std::getline(lines, line);) {
    clean += line.substr(0, line.find('#'));
    clean += '\n';
  }
  std::istringstream in(clean);
  std::int64_t alpha = 0, beta = 0, den = 0;
  if (!(in >> alpha >> beta >> den) || alpha <= 0 || beta <= 0 || den <= 0) {
    throw FormatError("distortion file header must be 'alpha beta denom' with positive values");
  }
  std::vector<std::int64_t> num(static_cast<std::size_t>(alpha * beta));
  for (auto& v : num) {
    if (!(in >> v)) throw FormatError("distortion file has too few entries");
    if (v < 0) throw FormatError("distortion entries must be nonnegative");
  }
  std::string extra;
  if (in >> extra) throw FormatError("distortion file has trailing data");
  return DistortionModel(static_cast<std::size_t>(alpha), static_cast<std::size_t>(beta), std::move(num), den);
}

DistortionModel read_distortion_file(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return parse_distortion_text(std::string(bytes.begin(), bytes.end()));
}

DistortionModel distortion_from_spec(const std::string& spec, std::size_t alpha) {
  if (spec == "hamming") return DistortionModel::hamming(alpha);
  if (spec == "absolute") return DistortionModel::absolute(alpha);
  if (spec.rfind("file=", 0) == 0) {
    auto model = read_distortion_file(spec.substr(5));
    require(model.alpha() == alpha, "distortion file alpha does not match the source alphabet");
    return model;
  }
  throw UsageError("unknown distortion '" + spec + "' (hamming, absolute or file=PATH)");
}

}  // namespace fslossy::io
