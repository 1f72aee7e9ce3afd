// Copyright 2026 The Authors.
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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "submod/errors.hpp"

namespace submod {

// A subset of the ground set {0, ..., n-1}, stored as a packed bitset.
//
// For n <= 64 this is a single word, so the encoding coincides with the
// usual bitmask and Mask() is available. Larger ground sets use more words;
// the canonical form (no bits above n) makes equality and hashing exact.
class Subset {
 public:
  Subset() = default;
  explicit Subset(int n) : n_(n), words_(WordCount(n), 0) {
    if (n < 0) Fail(ErrorCode::kOutOfRange, "negative ground-set size");
  }

  static Subset FromElements(int n, std::span<const int> elements) {
    Subset s(n);
    for (int e : elements) s.Insert(e);
    return s;
  }
  static Subset FromElements(int n, std::initializer_list<int> elements) {
    return FromElements(n, std::span<const int>(elements.begin(), elements.size()));
  }
  static Subset FromMask(int n, uint64_t mask) {
    if (n > 64) Fail(ErrorCode::kOutOfRange, "mask encoding needs n <= 64");
    if (n < 64 && (mask >> n) != 0) {
      Fail(ErrorCode::kOutOfRange, "mask has bits above n");
    }
    Subset s(n);
    if (n > 0) s.words_[0] = mask;
    return s;
  }
  static Subset Full(int n) {
    Subset s(n);
    for (int e = 0; e < n; ++e) s.Insert(e);
    return s;
  }

  int universe_size() const { return n_; }

  bool Contains(int e) const {
    CheckElement(e);
    return (words_[e >> 6] >> (e & 63)) & 1u;
  }
  void Insert(int e) {
    CheckElement(e);
    words_[e >> 6] |= uint64_t{1} << (e & 63);
  }
  void Erase(int e) {
    CheckElement(e);
    words_[e >> 6] &= ~(uint64_t{1} << (e & 63));
  }
  Subset With(int e) const {
    Subset s = *this;
    s.Insert(e);
    return s;
  }
  Subset Without(int e) const {
    Subset s = *this;
    s.Erase(e);
    return s;
  }

  int Count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool Empty() const {
    for (uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  uint64_t Mask() const {
    if (n_ > 64) Fail(ErrorCode::kOutOfRange, "mask encoding needs n <= 64");
    return n_ == 0 ? 0 : words_[0];
  }

  // Visits members in increasing order.
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        fn(static_cast<int>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> Elements() const {
    std::vector<int> out;
    out.reserve(Count());
    ForEach([&](int e) { out.push_back(e); });
    return out;
  }

  bool IsSubsetOf(const Subset& other) const {
    CheckSameUniverse(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
  }
  bool Intersects(const Subset& other) const {
    CheckSameUniverse(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
  }

  Subset Union(const Subset& other) const {
    CheckSameUniverse(other);
    Subset s = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] |= other.words_[w];
    return s;
  }
  Subset Intersection(const Subset& other) const {
    CheckSameUniverse(other);
    Subset s = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] &= other.words_[w];
    return s;
  }
  Subset Difference(const Subset& other) const {
    CheckSameUniverse(other);
    Subset s = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] &= ~other.words_[w];
    return s;
  }
  Subset Complement() const { return Full(n_).Difference(*this); }

  std::size_t Hash() const {
    std::size_t h = std::hash<int>{}(n_);
    for (uint64_t w : words_) {
      h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  // Orders by the integer value of the bitmask encoding.
  friend bool operator<(const Subset& a, const Subset& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t w = a.words_.size(); w-- > 0;) {
      if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
    }
    return false;
  }

  std::string ToString() const {
    std::string out = "{";
    bool first = true;
    ForEach([&](int e) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    });
    return out + "}";
  }

 private:
  static std::size_t WordCount(int n) { return n <= 0 ? 0 : (n + 63) / 64; }

  void CheckElement(int e) const {
    if (e < 0 || e >= n_) {
      Fail(ErrorCode::kOutOfRange, "element " + std::to_string(e) +
                                       " outside ground set of size " +
                                       std::to_string(n_));
    }
  }
  void CheckSameUniverse(const Subset& other) const {
    if (other.n_ != n_) Fail(ErrorCode::kOutOfRange, "ground-set size mismatch");
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

inline std::ostream& operator<<(std::ostream& os, const Subset& s) {
  return os << s.ToString();
}

struct SubsetHash {
  std::size_t operator()(const Subset& s) const { return s.Hash(); }
};

}  // namespace submod
