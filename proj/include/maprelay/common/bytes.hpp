// Copyright 2026 The maprelay Authors
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

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace maprelay {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

// 32-byte hash output.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  ByteView view() const { return {bytes.data(), bytes.size()}; }
  std::string hex() const { return to_hex(view()); }
  bool is_zero() const;

  static Digest from_hex(std::string_view hex);

  auto operator<=>(const Digest&) const = default;
  bool operator==(const Digest&) const = default;
};

// Big-endian, length-prefixed canonical encoder. Every wire format in the
// project is built on this so that encodings are byte-stable.
class Writer {
 public:
  Writer& u8(std::uint8_t v);
  Writer& u32(std::uint32_t v);
  Writer& u64(std::uint64_t v);
  Writer& boolean(bool v) { return u8(v ? 1 : 0); }
  Writer& raw(ByteView data);
  Writer& var_bytes(ByteView data);  // u32 length prefix
  Writer& str(std::string_view s) { return var_bytes(as_bytes(s)); }
  Writer& digest(const Digest& d) { return raw(d.view()); }

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Throws Error(kDecode) on truncation or trailing garbage (via finish()).
class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  bool boolean();
  ByteView raw(std::size_t n);
  Bytes var_bytes();
  std::string str();
  Digest digest();

  bool done() const { return pos_ == data_.size(); }
  void finish() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace maprelay
