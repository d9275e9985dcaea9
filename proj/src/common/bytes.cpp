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

#include "maprelay/common/bytes.hpp"

#include <algorithm>

#include "maprelay/common/error.hpp"

namespace maprelay {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kDuplicate: return "duplicate";
    case ErrorCode::kDecode: return "decode";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kUnknownTarget: return "unknown-target";
    case ErrorCode::kInsufficientFee: return "insufficient-fee";
    case ErrorCode::kProveRefused: return "prove-refused";
    case ErrorCode::kBitmapMismatch: return "bitmap-mismatch";
  }
  return "unknown";
}

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.starts_with("0x")) hex.remove_prefix(2);
  MAPRELAY_ENFORCE(hex.size() % 2 == 0, ErrorCode::kDecode, "odd-length hex");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    MAPRELAY_ENFORCE(hi >= 0 && lo >= 0, ErrorCode::kDecode, "bad hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

bool Digest::is_zero() const {
  return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

Digest Digest::from_hex(std::string_view hex) {
  Bytes raw = maprelay::from_hex(hex);
  MAPRELAY_ENFORCE(raw.size() == 32, ErrorCode::kDecode, "digest must be 32 bytes");
  Digest d;
  std::copy(raw.begin(), raw.end(), d.bytes.begin());
  return d;
}

Writer& Writer::u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}

Writer& Writer::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

Writer& Writer::u64(std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  return *this;
}

Writer& Writer::raw(ByteView data) {
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

Writer& Writer::var_bytes(ByteView data) {
  MAPRELAY_ENFORCE(data.size() <= 0xffffffffu, ErrorCode::kInvalidArgument,
                   "byte string too long");
  u32(static_cast<std::uint32_t>(data.size()));
  return raw(data);
}

ByteView Reader::raw(std::size_t n) {
  MAPRELAY_ENFORCE(n <= data_.size() - pos_, ErrorCode::kDecode, "truncated input");
  ByteView v = data_.subspan(pos_, n);
  pos_ += n;
  return v;
}

std::uint8_t Reader::u8() { return raw(1)[0]; }

std::uint32_t Reader::u32() {
  ByteView v = raw(4);
  std::uint32_t out = 0;
  for (auto b : v) out = out << 8 | b;
  return out;
}

std::uint64_t Reader::u64() {
  ByteView v = raw(8);
  std::uint64_t out = 0;
  for (auto b : v) out = out << 8 | b;
  return out;
}

bool Reader::boolean() {
  std::uint8_t v = u8();
  MAPRELAY_ENFORCE(v <= 1, ErrorCode::kDecode, "bad boolean");
  return v == 1;
}

Bytes Reader::var_bytes() {
  std::uint32_t n = u32();
  ByteView v = raw(n);
  return Bytes(v.begin(), v.end());
}

std::string Reader::str() {
  Bytes b = var_bytes();
  return std::string(b.begin(), b.end());
}

Digest Reader::digest() {
  Digest d;
  ByteView v = raw(32);
  std::copy(v.begin(), v.end(), d.bytes.begin());
  return d;
}

void Reader::finish() const {
  MAPRELAY_ENFORCE(done(), ErrorCode::kDecode, "trailing bytes after message");
}

}  // namespace maprelay
