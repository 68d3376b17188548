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

#include "fslossy/schemes.hpp"

#include <bit>
#include <optional>

#include "fslossy/empirical.hpp"
#include "fslossy/lz78.hpp"

namespace fslossy {

unsigned elias_delta_length(std::uint64_t i) {
  require(i >= 1, "Elias-delta encodes positive integers only");
  const unsigned n = static_cast<unsigned>(std::bit_width(i));  // floor(log2 i) + 1
  const unsigned l = static_cast<unsigned>(std::bit_width(n)) - 1;
  return n + 2 * l;
}

void elias_delta_encode(Bitstring& out, std::uint64_t i) {
  require(i >= 1, "Elias-delta encodes positive integers only");
  const unsigned n = static_cast<unsigned>(std::bit_width(i));
  const unsigned l = static_cast<unsigned>(std::bit_width(n)) - 1;
  out.append(0, l);
  out.append(n, l + 1);
  out.append(i, n - 1);  // i without its leading 1
}

Bitstring elias_delta_encode(std::uint64_t i) {
  Bitstring b;
  elias_delta_encode(b, i);
  return b;
}

std::uint64_t elias_delta_decode(BitReader& in) {
  unsigned l = 0;
  while (!in.read_bit()) {
    if (++l > 6) throw FormatError("Elias-delta prefix too long");
  }
  const std::uint64_t n = (std::uint64_t{1} << l) | in.read(l);
  if (n > 64) throw FormatError("Elias-delta value exceeds 64 bits");
  const auto low = static_cast<unsigned>(n - 1);
  return (low == 64 ? 0 : (std::uint64_t{1} << low)) | in.read(low);
}

char scheme_letter(SchemeId id) { return static_cast<char>('A' + static_cast<int>(id)); }

SchemeId parse_scheme(const std::string& text) {
  if (text == "a" || text == "A") return SchemeId::a;
  if (text == "b" || text == "B") return SchemeId::b;
  if (text == "c" || text == "C") return SchemeId::c;
  throw UsageError("unknown scheme '" + text + "' (expected a, b or c)");
}

void ContainerHeader::validate() const {
  require(k >= 1 && n % k == 0, "n must be divisible by k");
  require(model.alpha() == alpha && model.beta() == beta, "distortion model does not match alphabets");
  require(D >= 0, "D must be nonnegative");
  if (scheme == SchemeId::b) require(ell >= 1 && k % ell == 0, "scheme B needs ell dividing k");
  require(labels.empty() || labels.size() == beta, "label count must equal beta");
  require(alpha < (1u << 16) && beta < (1u << 16), "alphabet too large for the container");
}

void ContainerHeader::write(Bitstring& out) const {
  validate();
  out.append(kMagic, 32);
  out.append(kVersion, 8);
  out.append(alpha, 16);
  out.append(beta, 16);
  out.append(k, 32);
  out.append(ell, 32);
  out.append(n, 64);
  out.append(static_cast<std::uint8_t>(scheme), 8);
  out.append(static_cast<std::uint64_t>(D.numerator()), 64);
  out.append(static_cast<std::uint64_t>(D.denominator()), 64);
  out.append(static_cast<std::uint8_t>(model.kind()), 8);
  if (model.kind() == DistortionModel::Kind::matrix) {
    out.append(static_cast<std::uint64_t>(model.denominator()), 64);
    for (auto v : model.numerators()) out.append(static_cast<std::uint64_t>(v), 64);
  }
  if (scheme == SchemeId::c) out.append(seed, 64);
  out.append(labels.size(), 16);
  for (const auto& label : labels) {
    require(label.size() < 256, "label too long");
    out.append(label.size(), 8);
    for (unsigned char c : label) out.append(c, 8);
  }
}

ContainerHeader ContainerHeader::read(BitReader& in) {
  ContainerHeader h;
  if (in.read(32) != kMagic) throw FormatError("not an fslossy container (bad magic)");
  if (in.read(8) != kVersion) throw FormatError("unsupported container version");
  h.alpha = in.read(16);
  h.beta = in.read(16);
  h.k = in.read(32);
  h.ell = in.read(32);
  h.n = in.read(64);
  const auto scheme = in.read(8);
  if (scheme > 2) throw FormatError("unknown scheme id");
  h.scheme = static_cast<SchemeId>(scheme);
  const auto dnum = static_cast<std::int64_t>(in.read(64));
  const auto dden = static_cast<std::int64_t>(in.read(64));
  if (dden <= 0 || dnum < 0) throw FormatError("bad distortion level in header");
  h.D = Rational(dnum, dden);
  const auto kind = in.read(8);
  if (h.alpha == 0 || h.beta == 0 || h.k == 0) throw FormatError("zero size in header");
  try {
    switch (kind) {
      case 0:
        require(h.alpha == h.beta, "hamming model needs equal alphabets");
        h.model = DistortionModel::hamming(h.alpha);
        break;
      case 1:
        require(h.alpha == h.beta, "absolute model needs equal alphabets");
        h.model = DistortionModel::absolute(h.alpha);
        break;
      case 2: {
        const auto den = static_cast<std::int64_t>(in.read(64));
        std::vector<std::int64_t> num(h.alpha * h.beta);
        for (auto& v : num) v = static_cast<std::int64_t>(in.read(64));
        h.model = DistortionModel(h.alpha, h.beta, std::move(num), den);
        break;
      }
      default:
        throw FormatError("unknown distortion model id");
    }
    if (h.scheme == SchemeId::c) h.seed = in.read(64);
    const auto labels = in.read(16);
    for (std::uint64_t i = 0; i < labels; ++i) {
      std::string label(in.read(8), '\0');
      for (auto& c : label) c = static_cast<char>(in.read(8));
      h.labels.push_back(std::move(label));
    }
    h.validate();
  } catch (const UsageError& e) {
    throw FormatError(std::string("invalid container header: ") + e.what());
  }
  return h;
}

void scheme_a_block(Bitstring& out, std::span<const Symbol> y, std::size_t beta) {
  lz78::lz_encode_into(out, y, beta);
}

void scheme_b_block(Bitstring& out, std::span<const Symbol> y, std::size_t beta, std::size_t ell) {
  TypeCode code = type_index_encode(y, beta, ell);
  write_type_descriptor(out, code.type);
  write_big(out, code.index, index_width(type_class_size(code.type)));
}

std::vector<Symbol> scheme_b_decode_block(BitReader& in, std::size_t k, std::size_t ell,
                                          std::size_t beta) {
  BlockEmpiricalDist type = read_type_descriptor(in, k, ell, beta);
  BigInt index = read_big(in, index_width(type_class_size(type)));
  return type_index_decode(type, index);
}

namespace {

struct StopEnumeration {};

struct BlockCode {
  Bitstring bits;
  std::vector<Symbol> y;
  bool escaped = false;
  std::uint64_t hit = 0;
};

BlockCode scheme_c_block(std::span<const Symbol> x, std::size_t block, const UniversalModel& u,
                         const Philox4x32& prf, const DistortionModel& model, std::int64_t threshold,
                         std::uint64_t max_draws, std::uint64_t limit) {
  BlockCode code;
  code.y.resize(x.size());
  for (std::uint64_t counter = 1; counter <= max_draws; ++counter) {
    block_from_index(u_sample_index(u, prf, block, counter), u.beta(), code.y);
    if (distortion_units(x, code.y, model) <= threshold) {
      code.bits.push_back(false);
      elias_delta_encode(code.bits, counter);
      code.hit = counter;
      return code;
    }
  }
  // Escape: the lexicographically first ball member, written raw.
  code.escaped = true;
  bool found = false;
  try {
    for_each_ball_member(
        x, model, threshold,
        [&](std::span<const Symbol> y) {
          code.y.assign(y.begin(), y.end());
          found = true;
          throw StopEnumeration{};
        },
        limit);
  } catch (const StopEnumeration&) {
  }
  if (!found) throw UsageError("distortion ball is empty");
  code.bits.push_back(true);
  for (Symbol s : code.y) code.bits.append(s, ceil_log2(u.beta()));
  return code;
}

}  // namespace

Encoded encode(const Sequence& x, const DistortionModel& model, const EncodeOptions& options) {
  require(x.alphabet().size() == model.alpha(), "source alphabet does not match the distortion model");
  Encoded enc;
  ContainerHeader& h = enc.header;
  h.alpha = model.alpha();
  h.beta = model.beta();
  h.k = options.k;
  h.ell = options.scheme == SchemeId::b ? options.ell : 0;
  h.n = x.size();
  h.scheme = options.scheme;
  h.D = options.D;
  h.model = model;
  h.seed = options.scheme == SchemeId::c ? options.seed : 0;
  if (x.alphabet().has_labels() && model.alpha() == model.beta()) h.labels = x.alphabet().labels();
  h.write(enc.stream);
  enc.header_bits = enc.stream.size();

  const std::size_t k = options.k;
  const std::size_t blocks = x.size() / k;
  const Budget budget(options.D, k);
  const std::int64_t threshold = budget.threshold(model);
  std::vector<BlockCode> codes(blocks);

  std::optional<UniversalModel> owned;
  const UniversalModel* u = options.universal;
  if (options.scheme == SchemeId::c && !u) {
    owned.emplace(build_universal(k, model.beta(), options.exec, options.limit));
    u = &*owned;
  }
  if (u) require(u->k() == k && u->beta() == model.beta(), "universal model does not match (k, beta)");
  const Philox4x32 prf(options.seed);

  kernels::for_each_index(blocks, options.exec, [&](std::size_t i) {
    auto xb = x.block(i, k);
    BlockCode& code = codes[i];
    switch (options.scheme) {
      case SchemeId::a: {
        auto a = kernels::analyze_block(xb, model, threshold, 0, options.limit);
        code.y = options.objective == Objective::exact_lz ? a.argmin_lz : a.argmin_c;
        scheme_a_block(code.bits, code.y, model.beta());
        break;
      }
      case SchemeId::b: {
        auto a = kernels::analyze_block(xb, model, threshold, options.ell, options.limit);
        code.y = a.argmin_entropy;
        scheme_b_block(code.bits, code.y, model.beta(), options.ell);
        break;
      }
      case SchemeId::c:
        code = scheme_c_block(xb, i, *u, prf, model, threshold, options.max_draws, options.limit);
        break;
    }
  });

  enc.reproduction.reserve(x.size());
  for (auto& code : codes) {
    enc.stream.append(code.bits);
    enc.block_bits.push_back(code.bits.size());
    enc.reproduction.insert(enc.reproduction.end(), code.y.begin(), code.y.end());
    if (code.escaped) ++enc.escapes;
    if (options.scheme == SchemeId::c) enc.hit_index.push_back(code.hit);
  }
  return enc;
}

Encoded scheme_a_encode(const Sequence& x, std::size_t k, const DistortionModel& model, Rational D,
                        Objective objective) {
  EncodeOptions o;
  o.scheme = SchemeId::a;
  o.k = k;
  o.D = D;
  o.objective = objective;
  return encode(x, model, o);
}

Encoded scheme_b_encode(const Sequence& x, std::size_t k, std::size_t ell,
                        const DistortionModel& model, Rational D) {
  EncodeOptions o;
  o.scheme = SchemeId::b;
  o.k = k;
  o.ell = ell;
  o.D = D;
  return encode(x, model, o);
}

Encoded scheme_c_encode(const Sequence& x, std::size_t k, const DistortionModel& model, Rational D,
                        std::uint64_t seed, std::uint64_t max_draws, const UniversalModel* universal) {
  EncodeOptions o;
  o.scheme = SchemeId::c;
  o.k = k;
  o.D = D;
  o.seed = seed;
  o.max_draws = max_draws;
  o.universal = universal;
  return encode(x, model, o);
}

Decoded decode(std::span<const std::uint8_t> bytes, const UniversalModel* universal) {
  BitReader in(bytes, bytes.size() * 8);
  Decoded dec;
  dec.header = ContainerHeader::read(in);
  dec.header_bits = in.position();
  const ContainerHeader& h = dec.header;
  std::optional<UniversalModel> owned;
  if (h.scheme == SchemeId::c && !universal) {
    owned.emplace(build_universal(h.k, h.beta));
    universal = &*owned;
  }
  if (h.scheme == SchemeId::c && (universal->k() != h.k || universal->beta() != h.beta)) {
    throw UsageError("universal model does not match the container's (k, beta)");
  }
  const Philox4x32 prf(h.seed);
  std::vector<Symbol> out;
  out.reserve(h.n);
  std::vector<Symbol> y(h.k);
  for (std::uint64_t i = 0; i < h.n / h.k; ++i) {
    const std::size_t start = in.position();
    switch (h.scheme) {
      case SchemeId::a: {
        auto block = lz78::lz_decode(in, h.k, h.beta);
        out.insert(out.end(), block.begin(), block.end());
        break;
      }
      case SchemeId::b: {
        auto block = scheme_b_decode_block(in, h.k, h.ell, h.beta);
        out.insert(out.end(), block.begin(), block.end());
        break;
      }
      case SchemeId::c: {
        if (!in.read_bit()) {
          const std::uint64_t counter = elias_delta_decode(in);
          block_from_index(u_sample_index(*universal, prf, i, counter), h.beta, y);
        } else {
          ++dec.escapes;
          for (auto& s : y) {
            s = static_cast<Symbol>(in.read(ceil_log2(h.beta)));
            if (s >= h.beta) throw FormatError("raw block symbol out of range");
          }
        }
        out.insert(out.end(), y.begin(), y.end());
        break;
      }
    }
    dec.block_bits.push_back(in.position() - start);
  }
  // Anything after the payload must be zero padding inside the final byte.
  if (bytes.size() * 8 - in.position() >= 8) throw FormatError("trailing bytes after payload");
  while (in.remaining() > 0) {
    if (in.read_bit()) throw FormatError("nonzero padding after payload");
  }
  dec.reproduction = Sequence(Alphabet(h.beta, h.labels), std::move(out));
  return dec;
}

RateReport measure_rho(std::span<const std::uint8_t> bytes, const Sequence* source,
                       bool include_header, const UniversalModel* universal) {
  Decoded dec = decode(bytes, universal);
  RateReport r;
  r.header_bits = dec.header_bits;
  r.header_included = include_header;
  r.block_bits = dec.block_bits;
  r.escapes = dec.escapes;
  for (auto b : dec.block_bits) r.total_bits += b;
  if (include_header) r.total_bits += dec.header_bits;
  const auto n = dec.header.n;
  r.rho = n == 0 ? 0.0 : static_cast<double>(r.total_bits) / static_cast<double>(n);
  if (source) {
    require(source->size() == n, "source length does not match the container");
    const Budget budget(dec.header.D, dec.header.k);
    const auto& model = dec.header.model;
    for (std::uint64_t i = 0; i < n / dec.header.k; ++i) {
      Rational d(distortion_units(source->block(i, dec.header.k),
                                  dec.reproduction.block(i, dec.header.k), model),
                 model.denominator());
      if (d > budget.block_budget) r.semifaithful = false;
      r.block_distortion.push_back(d);
    }
  }
  return r;
}

}  // namespace fslossy
