#pragma once

// Canonical enumeration of deciders: a bijection between natural-number
// indices and binary strings (shortlex order), and a fixed-layout binary
// encoding of machine descriptions that makes every index name a machine.
//
// Encoding layout (frozen, see docs/formats.md):
//   header: state count m >= 1 in Elias-gamma code
//   body:   m*3 rows, state-major, symbol order zero/one/blank; each row is
//           target code of ceil(log2(m+2)) bits (0..m-1 = states, m = accept,
//           m+1 = reject), write symbol (00=zero 01=one 10=blank, 11 invalid),
//           move (0=left 1=right)
//   start state is always 0
// Any string that fails to parse exactly decodes to the trivial rejector, so
// the enumeration is total.

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "deciderlab/machines.hpp"
#include "deciderlab/vm.hpp"

namespace deciderlab {

using DeciderIndex = std::uint64_t;

// |d|: length of the d-th string in shortlex order ("", 0, 1, 00, 01, ...).
inline std::uint64_t bit_length(DeciderIndex d) {
  return static_cast<std::uint64_t>(std::bit_width(d + 1)) - 1;
}

inline std::string index_to_bits(DeciderIndex d) {
  assert(d != ~std::uint64_t{0});
  std::uint64_t v = d + 1;
  int len = std::bit_width(v) - 1;  // drop the leading 1
  std::string bits(static_cast<std::size_t>(len), '0');
  for (int i = len - 1; i >= 0; --i) {
    if (v & 1u) bits[static_cast<std::size_t>(i)] = '1';
    v >>= 1;
  }
  return bits;
}

inline DeciderIndex bits_to_index(std::string_view bits) {
  assert(bits.size() <= 63);
  std::uint64_t v = 1;
  for (char c : bits) {
    assert(c == '0' || c == '1');
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v - 1;
}

namespace detail {

class BitReader {
 public:
  explicit BitReader(std::string_view bits) : bits_(bits) {}

  std::size_t remaining() const { return bits_.size() - pos_; }

  // Reads `count` bits as a big-endian value; nullopt when short.
  std::optional<std::uint64_t> take(std::size_t count) {
    if (count > remaining()) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < count; ++i) {
      v = (v << 1) | static_cast<std::uint64_t>(bits_[pos_ + i] == '1');
    }
    pos_ += count;
    return v;
  }

  std::optional<std::uint64_t> take_gamma() {
    std::size_t zeros = 0;
    while (zeros < remaining() && bits_[pos_ + zeros] == '0') ++zeros;
    if (zeros >= remaining()) return std::nullopt;  // no stop bit
    if (zeros > 40) return std::nullopt;            // absurd state count
    pos_ += zeros + 1;
    std::optional<std::uint64_t> tail = take(zeros);
    if (!tail) return std::nullopt;
    return (std::uint64_t{1} << zeros) | *tail;
  }

 private:
  std::string_view bits_;
  std::size_t pos_ = 0;
};

inline void append_bits(std::string& out, std::uint64_t value, std::size_t count) {
  for (std::size_t i = count; i-- > 0;) {
    out.push_back((value >> i) & 1u ? '1' : '0');
  }
}

inline void append_gamma(std::string& out, std::uint64_t value) {
  assert(value >= 1);
  std::size_t width = static_cast<std::size_t>(std::bit_width(value));
  out.append(width - 1, '0');
  append_bits(out, value, width);
}

// Bits of the target code for an m-state machine: values 0..m+1.
inline std::size_t target_width(std::uint64_t state_count) {
  return static_cast<std::size_t>(std::bit_width(state_count + 1));
}

// Parses the layout into *out when out is non-null; false means malformed.
// Reuses out's row storage, so hot loops decode without allocating.
inline bool decode_into(std::string_view bits, MachineDescription* out) {
  BitReader reader(bits);
  std::optional<std::uint64_t> header = reader.take_gamma();
  if (!header || *header < 1) return false;
  std::uint64_t m = *header;
  std::size_t width = target_width(m);
  // Reject early when the header promises more rows than the string holds;
  // also keeps m*3*(width+3) far from overflow.
  if (m > bits.size()) return false;
  std::uint64_t body = m * kSymbolCount * (width + 3);
  if (body != reader.remaining()) return false;  // too short or dangling bits

  if (out) {
    out->state_count = static_cast<std::uint32_t>(m);
    out->start_state = 0;
    out->rules.resize(static_cast<std::size_t>(m) * kSymbolCount);
  }
  for (std::uint64_t row = 0; row < m * kSymbolCount; ++row) {
    std::uint64_t target_code = *reader.take(width);
    std::uint64_t write_code = *reader.take(2);
    std::uint64_t move_code = *reader.take(1);
    if (target_code > m + 1) return false;
    if (write_code > 2) return false;
    if (!out) continue;
    Rule& rule = out->rules[row];
    if (target_code == m) {
      rule.next = Target::accept();
    } else if (target_code == m + 1) {
      rule.next = Target::reject();
    } else {
      rule.next = Target::state(static_cast<std::uint32_t>(target_code));
    }
    rule.write = static_cast<Symbol>(write_code);
    rule.move = move_code ? Move::Right : Move::Left;
  }
  return true;
}

}  // namespace detail

inline bool is_valid_encoding(std::string_view bits) {
  return detail::decode_into(bits, nullptr);
}

// As bits_to_machine, but reports malformed input instead of falling back,
// and reuses out's storage.
inline bool try_decode_machine(std::string_view bits, MachineDescription& out) {
  return detail::decode_into(bits, &out);
}

// Total: malformed strings decode to the trivial rejector.
inline MachineDescription bits_to_machine(std::string_view bits) {
  MachineDescription m;
  if (detail::decode_into(bits, &m)) return m;
  return trivial_rejector();
}

inline void encode_machine_into(const MachineDescription& m, std::string& out) {
  assert(is_valid(m));
  assert(m.start_state == 0);
  out.clear();
  detail::append_gamma(out, m.state_count);
  std::size_t width = detail::target_width(m.state_count);
  for (const Rule& rule : m.rules) {
    std::uint64_t target_code;
    if (rule.next.is_accept()) {
      target_code = m.state_count;
    } else if (rule.next.is_reject()) {
      target_code = m.state_count + std::uint64_t{1};
    } else {
      target_code = rule.next.state_id();
    }
    detail::append_bits(out, target_code, width);
    detail::append_bits(out, static_cast<std::uint64_t>(rule.write), 2);
    out.push_back(rule.move == Move::Right ? '1' : '0');
  }
}

inline std::string encode_machine(const MachineDescription& m) {
  std::string bits;
  encode_machine_into(m, bits);
  return bits;
}

inline MachineDescription machine_for_index(DeciderIndex d) {
  return bits_to_machine(index_to_bits(d));
}

// Index of the machine's own encoding, when it fits a 63-bit string
// (machines of up to 3 states; larger encodings exceed the index range).
inline std::optional<DeciderIndex> canonical_index(const MachineDescription& m) {
  std::string bits = encode_machine(m);
  if (bits.size() > 63) return std::nullopt;
  return bits_to_index(bits);
}

}  // namespace deciderlab
