// Copyright 2026 The pbshare Authors
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
#include <initializer_list>
#include <iterator>
#include <vector>

#include "pbshare/errors.hpp"

namespace pbshare {

using ProjectIndex = std::uint32_t;
using AgentIndex = std::uint32_t;

/// Subset of a fixed universe of projects {0, ..., universe-1}.
/// Iteration visits members in canonical (index) order.
class ProjectSet {
 public:
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ProjectIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = const ProjectIndex*;
    using reference = ProjectIndex;

    Iterator() = default;
    Iterator(const ProjectSet* set, std::size_t pos) : set_(set), pos_(pos) {
      advanceToMember();
    }
    ProjectIndex operator*() const { return static_cast<ProjectIndex>(pos_); }
    Iterator& operator++() {
      ++pos_;
      advanceToMember();
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const Iterator& other) const { return pos_ == other.pos_; }

   private:
    void advanceToMember() {
      const std::size_t n = set_->universe_;
      while (pos_ < n) {
        const std::uint64_t word = set_->words_[pos_ / 64] >> (pos_ % 64);
        if (word != 0) {
          pos_ += static_cast<std::size_t>(std::countr_zero(word));
          if (pos_ > n) pos_ = n;
          return;
        }
        pos_ = (pos_ / 64 + 1) * 64;
      }
      pos_ = n;
    }

    const ProjectSet* set_ = nullptr;
    std::size_t pos_ = 0;
  };

  ProjectSet() = default;
  explicit ProjectSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  ProjectSet(std::size_t universe, std::initializer_list<ProjectIndex> members)
      : ProjectSet(universe) {
    for (ProjectIndex p : members) insert(p);
  }

  static ProjectSet full(std::size_t universe) {
    ProjectSet s(universe);
    for (std::size_t p = 0; p < universe; ++p) s.insert(static_cast<ProjectIndex>(p));
    return s;
  }

  /// Bit k of `mask` is project k. Requires universe <= 64.
  static ProjectSet fromMask(std::size_t universe, std::uint64_t mask) {
    if (universe > 64) throw SizeError("mask form needs at most 64 projects");
    ProjectSet s(universe);
    if (universe > 0) {
      const std::uint64_t valid =
          universe == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << universe) - 1);
      s.words_[0] = mask & valid;
    }
    return s;
  }

  std::uint64_t mask() const {
    if (universe_ > 64) throw SizeError("mask form needs at most 64 projects");
    return words_.empty() ? 0 : words_[0];
  }

  std::size_t universe() const { return universe_; }

  bool contains(ProjectIndex p) const {
    return p < universe_ && ((words_[p / 64] >> (p % 64)) & 1U) != 0;
  }
  void insert(ProjectIndex p) {
    checkRange(p);
    words_[p / 64] |= std::uint64_t{1} << (p % 64);
  }
  void erase(ProjectIndex p) {
    checkRange(p);
    words_[p / 64] &= ~(std::uint64_t{1} << (p % 64));
  }
  ProjectSet with(ProjectIndex p) const {
    ProjectSet s = *this;
    s.insert(p);
    return s;
  }

  std::size_t size() const {
    std::size_t count = 0;
    for (std::uint64_t w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }
  bool empty() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool isSubsetOf(const ProjectSet& other) const {
    sameUniverse(other);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    }
    return true;
  }
  bool intersects(const ProjectSet& other) const {
    sameUniverse(other);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & other.words_[k]) != 0) return true;
    }
    return false;
  }
  ProjectSet operator|(const ProjectSet& other) const {
    sameUniverse(other);
    ProjectSet s = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) s.words_[k] |= other.words_[k];
    return s;
  }
  ProjectSet operator&(const ProjectSet& other) const {
    sameUniverse(other);
    ProjectSet s = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) s.words_[k] &= other.words_[k];
    return s;
  }
  ProjectSet operator-(const ProjectSet& other) const {
    sameUniverse(other);
    ProjectSet s = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) s.words_[k] &= ~other.words_[k];
    return s;
  }

  std::vector<ProjectIndex> members() const { return {begin(), end()}; }

  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, universe_); }

  bool operator==(const ProjectSet& other) const = default;

 private:
  void checkRange(ProjectIndex p) const {
    if (p >= universe_) throw InputError("project index out of range");
  }
  void sameUniverse(const ProjectSet& other) const {
    if (universe_ != other.universe_) throw InputError("project sets over different universes");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace pbshare
