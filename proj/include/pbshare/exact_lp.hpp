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

// Exact linear feasibility over the rationals: phase one of the primal
// simplex method on a dense tableau with Bland's rule (no cycling).

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pbshare/errors.hpp"
#include "pbshare/rational.hpp"

namespace pbshare {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LinearRow {
  std::vector<std::pair<std::size_t, Rational>> terms;  // (variable, coefficient)
  Sense sense = Sense::LessEqual;
  Rational rhs;
};

/// Finds x >= 0 satisfying every row, or nullopt when none exists.
class FeasibilityProblem {
 public:
  explicit FeasibilityProblem(std::size_t numVariables) : numVariables_(numVariables) {}

  std::size_t numVariables() const { return numVariables_; }
  std::size_t numRows() const { return rows_.size(); }

  void addRow(LinearRow row) {
    for (const auto& [var, coeff] : row.terms) {
      if (var >= numVariables_) throw InputError("linear row references unknown variable");
    }
    rows_.push_back(std::move(row));
  }

  std::optional<std::vector<Rational>> solve() const {
    const std::size_t rowCount = rows_.size();
    // Column layout: structural | slack/surplus (one per inequality) | artificial.
    std::size_t slackCount = 0;
    for (const auto& row : rows_) {
      if (row.sense != Sense::Equal) ++slackCount;
    }
    const std::size_t slackBase = numVariables_;
    const std::size_t artBase = slackBase + slackCount;

    std::vector<std::vector<Rational>> tab(rowCount);
    std::vector<Rational> rhs(rowCount);
    std::vector<std::size_t> basis(rowCount);
    std::vector<std::size_t> artificialOf(rowCount, kNone);
    std::size_t artCount = 0;
    std::size_t slack = slackBase;
    for (std::size_t r = 0; r < rowCount; ++r) {
      const LinearRow& row = rows_[r];
      std::vector<Rational> coeffs(artBase, Rational(0));
      for (const auto& [var, coeff] : row.terms) coeffs[var] += coeff;
      std::size_t slackCol = kNone;
      if (row.sense == Sense::LessEqual) {
        slackCol = slack++;
        coeffs[slackCol] = 1;
      } else if (row.sense == Sense::GreaterEqual) {
        slackCol = slack++;
        coeffs[slackCol] = -1;
      }
      Rational b = row.rhs;
      if (b < 0) {
        for (auto& c : coeffs) c = -c;
        b = -b;
      }
      if (slackCol != kNone && coeffs[slackCol] == 1) {
        basis[r] = slackCol;
      } else {
        artificialOf[r] = artCount++;
      }
      tab[r] = std::move(coeffs);
      rhs[r] = std::move(b);
    }
    const std::size_t cols = artBase + artCount;
    for (std::size_t r = 0; r < rowCount; ++r) {
      tab[r].resize(cols, Rational(0));
      if (artificialOf[r] != kNone) {
        basis[r] = artBase + artificialOf[r];
        tab[r][basis[r]] = 1;
      }
    }

    // Reduced costs of "minimise the sum of artificials".
    std::vector<Rational> reduced(cols, Rational(0));
    Rational objective = 0;
    for (std::size_t c = artBase; c < cols; ++c) reduced[c] = 1;
    for (std::size_t r = 0; r < rowCount; ++r) {
      if (artificialOf[r] == kNone) continue;
      for (std::size_t c = 0; c < cols; ++c) reduced[c] -= tab[r][c];
      objective -= rhs[r];
    }

    while (true) {
      std::size_t entering = kNone;
      for (std::size_t c = 0; c < cols; ++c) {
        if (reduced[c] < 0) {
          entering = c;
          break;
        }
      }
      if (entering == kNone) break;
      std::size_t leaving = kNone;
      Rational bestRatio;
      for (std::size_t r = 0; r < rowCount; ++r) {
        if (tab[r][entering] <= 0) continue;
        Rational ratio = rhs[r] / tab[r][entering];
        if (leaving == kNone || ratio < bestRatio ||
            (ratio == bestRatio && basis[r] < basis[leaving])) {
          leaving = r;
          bestRatio = std::move(ratio);
        }
      }
      // Phase one is bounded below by zero, so an entering column always has a pivot row.
      if (leaving == kNone) break;
      pivot(tab, rhs, reduced, objective, leaving, entering);
      basis[leaving] = entering;
    }

    if (objective != 0) return std::nullopt;
    std::vector<Rational> x(numVariables_, Rational(0));
    for (std::size_t r = 0; r < rowCount; ++r) {
      if (basis[r] < numVariables_) x[basis[r]] = rhs[r];
    }
    return x;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  static void pivot(std::vector<std::vector<Rational>>& tab, std::vector<Rational>& rhs,
                    std::vector<Rational>& reduced, Rational& objective, std::size_t row,
                    std::size_t col) {
    const Rational inv = 1 / tab[row][col];
    for (auto& v : tab[row]) {
      if (v != 0) v *= inv;
    }
    rhs[row] *= inv;
    for (std::size_t r = 0; r < tab.size(); ++r) {
      if (r == row || tab[r][col] == 0) continue;
      const Rational factor = tab[r][col];
      for (std::size_t c = 0; c < tab[r].size(); ++c) {
        if (tab[row][c] != 0) tab[r][c] -= factor * tab[row][c];
      }
      rhs[r] -= factor * rhs[row];
    }
    if (reduced[col] != 0) {
      const Rational factor = reduced[col];
      for (std::size_t c = 0; c < reduced.size(); ++c) {
        if (tab[row][c] != 0) reduced[c] -= factor * tab[row][c];
      }
      objective -= factor * rhs[row];
    }
  }

  std::size_t numVariables_;
  std::vector<LinearRow> rows_;
};

}  // namespace pbshare
