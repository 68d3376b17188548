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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fslossy/bits.hpp"
#include "fslossy/core.hpp"
#include "fslossy/kernels.hpp"
#include "fslossy/universal.hpp"

namespace fslossy {

// Elias-delta code for positive integers; length floor(log2 i) + 2 floor(log2(floor(log2 i) + 1)) + 1.
void elias_delta_encode(Bitstring& out, std::uint64_t i);
Bitstring elias_delta_encode(std::uint64_t i);
std::uint64_t elias_delta_decode(BitReader& in);
unsigned elias_delta_length(std::uint64_t i);

enum class SchemeId : std::uint8_t { a = 0, b = 1, c = 2 };
char scheme_letter(SchemeId id);
SchemeId parse_scheme(const std::string& text);

/// Scheme A ball search objective.
enum class Objective : std::uint8_t { exact_lz = 0, clogc = 1 };

/// Container header; the bit layout is documented in FORMAT.md.
struct ContainerHeader {
  static constexpr std::uint32_t kMagic = 0x46534C43;  // "FSLC"
  static constexpr std::uint8_t kVersion = 1;

  std::size_t alpha = 1;
  std::size_t beta = 1;
  std::size_t k = 1;
  std::size_t ell = 0;
  std::uint64_t n = 0;
  SchemeId scheme = SchemeId::a;
  Rational D = 0;
  DistortionModel model = DistortionModel::hamming(1);
  std::uint64_t seed = 0;              // scheme C only
  std::vector<std::string> labels;     // reproduction labels, optional

  void validate() const;
  void write(Bitstring& out) const;
  static ContainerHeader read(BitReader& in);
};

struct EncodeOptions {
  SchemeId scheme = SchemeId::a;
  std::size_t k = 8;
  std::size_t ell = 0;                 // scheme B only
  Rational D = 0;
  Objective objective = Objective::exact_lz;
  std::uint64_t seed = 0;
  std::uint64_t max_draws = std::uint64_t{1} << 20;
  kernels::Exec exec = kernels::Exec::parallel;
  std::uint64_t limit = kDefaultEnumerationLimit;
  /// Prebuilt U for scheme C; built on demand when null.
  const UniversalModel* universal = nullptr;
};

struct Encoded {
  ContainerHeader header;
  Bitstring stream;                    // header followed by payload
  std::size_t header_bits = 0;
  std::vector<std::uint64_t> block_bits;
  std::vector<Symbol> reproduction;    // the chosen reproduction blocks, concatenated
  std::uint64_t escapes = 0;           // scheme C fallbacks
  std::vector<std::uint64_t> hit_index;  // scheme C: draw index per block, 0 on escape

  std::uint64_t payload_bits() const { return stream.size() - header_bits; }
  std::vector<std::uint8_t> bytes() const { return stream.bytes(); }
};

Encoded encode(const Sequence& x, const DistortionModel& model, const EncodeOptions& options);

Encoded scheme_a_encode(const Sequence& x, std::size_t k, const DistortionModel& model,
                        Rational D, Objective objective = Objective::exact_lz);
Encoded scheme_b_encode(const Sequence& x, std::size_t k, std::size_t ell,
                        const DistortionModel& model, Rational D);
Encoded scheme_c_encode(const Sequence& x, std::size_t k, const DistortionModel& model,
                        Rational D, std::uint64_t seed,
                        std::uint64_t max_draws = std::uint64_t{1} << 20,
                        const UniversalModel* universal = nullptr);

struct Decoded {
  ContainerHeader header;
  Sequence reproduction;
  std::size_t header_bits = 0;
  std::vector<std::uint64_t> block_bits;
  std::uint64_t escapes = 0;
};

/// Parses any container. Scheme C rebuilds U for (k, beta) unless one is supplied.
Decoded decode(std::span<const std::uint8_t> bytes, const UniversalModel* universal = nullptr);
inline Decoded decode(const Bitstring& stream, const UniversalModel* universal = nullptr) {
  return decode(stream.bytes(), universal);
}

/// Single-block coders shared by the encoder, the decoder and the tests.
void scheme_a_block(Bitstring& out, std::span<const Symbol> y, std::size_t beta);
void scheme_b_block(Bitstring& out, std::span<const Symbol> y, std::size_t beta, std::size_t ell);
std::vector<Symbol> scheme_b_decode_block(BitReader& in, std::size_t k, std::size_t ell,
                                          std::size_t beta);

struct RateReport {
  std::uint64_t total_bits = 0;        // L(b^n): payload bits, plus header bits if requested
  std::uint64_t header_bits = 0;
  bool header_included = false;
  double rho = 0;                      // total_bits / n
  std::vector<std::uint64_t> block_bits;
  std::vector<Rational> block_distortion;  // empty without the source
  bool semifaithful = true;                // every block distortion <= kD
  std::uint64_t escapes = 0;
};

/// Decodes the container and reports its rate. With the source sequence the
/// per-block distortions are recomputed from the decoded reproduction.
RateReport measure_rho(std::span<const std::uint8_t> bytes, const Sequence* source = nullptr,
                       bool include_header = false, const UniversalModel* universal = nullptr);

}  // namespace fslossy
