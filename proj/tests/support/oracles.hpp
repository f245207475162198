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

// Slow reference implementations used only by tests. They read the raw
// costs and ballots, quantify over every agent subgroup literally, and share
// no code with the library beyond the rational type.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pbshare/fixtures.hpp"

namespace pbshare::oracle {

struct Raw {
  std::vector<Cost> cost;
  Cost budget = 0;
  std::vector<std::uint32_t> ballot;  // bit p set iff project p approved
  int n = 0;
  int m = 0;
};

inline Raw raw(const Election& e) {
  Raw r;
  r.m = static_cast<int>(e.instance.numProjects());
  r.n = static_cast<int>(e.profile.numAgents());
  r.budget = e.instance.budget();
  for (int p = 0; p < r.m; ++p) r.cost.push_back(e.instance.cost(static_cast<ProjectIndex>(p)));
  for (int i = 0; i < r.n; ++i) {
    std::uint32_t mask = 0;
    for (int p = 0; p < r.m; ++p) {
      if (e.profile.ballot(static_cast<AgentIndex>(i)).contains(static_cast<ProjectIndex>(p))) mask |= 1u << p;
    }
    r.ballot.push_back(mask);
  }
  return r;
}

inline bool in(std::uint32_t set, int k) { return (set >> k) & 1u; }

inline Cost costOf(const Raw& r, std::uint32_t set) {
  Cost total = 0;
  for (int p = 0; p < r.m; ++p) {
    if (in(set, p)) total += r.cost[p];
  }
  return total;
}

inline int supporters(const Raw& r, int p) {
  int count = 0;
  for (int i = 0; i < r.n; ++i) count += in(r.ballot[i], p);
  return count;
}

inline Rational share(const Raw& r, std::uint32_t set, int i) {
  Rational total = 0;
  for (int p = 0; p < r.m; ++p) {
    if (in(set, p) && in(r.ballot[i], p)) total += Rational(r.cost[p]) / supporters(r, p);
  }
  return total;
}

inline Rational fairShare(const Raw& r, int i) {
  const Rational perAgent = Rational(r.budget) / r.n;
  const Rational own = share(r, r.ballot[i], i);
  return own < perAgent ? own : perAgent;
}

inline bool fs(const Raw& r, std::uint32_t pi) {
  for (int i = 0; i < r.n; ++i) {
    if (share(r, pi, i) < fairShare(r, i)) return false;
  }
  return true;
}

inline bool fs1(const Raw& r, std::uint32_t pi) {
  for (int i = 0; i < r.n; ++i) {
    bool ok = share(r, pi, i) >= fairShare(r, i);
    for (int p = 0; p < r.m && !ok; ++p) ok = share(r, pi | (1u << p), i) >= fairShare(r, i);
    if (!ok) return false;
  }
  return true;
}

inline bool localFs(const Raw& r, std::uint32_t pi) {
  for (int p = 0; p < r.m; ++p) {
    if (in(pi, p)) continue;
    bool allBelow = true;
    for (int i = 0; i < r.n; ++i) {
      if (in(r.ballot[i], p) && share(r, pi | (1u << p), i) >= fairShare(r, i)) allBelow = false;
    }
    if (allBelow) return false;
  }
  return true;
}

/// Calls f(P, N) for every P-cohesive group N (both as bitmasks).
template <typename F>
void forEachCohesive(const Raw& r, F&& f) {
  for (std::uint32_t P = 1; P < (1u << r.m); ++P) {
    const Cost c = costOf(r, P);
    for (std::uint32_t N = 1; N < (1u << r.n); ++N) {
      bool all = true;
      long long size = 0;
      for (int i = 0; i < r.n; ++i) {
        if (!in(N, i)) continue;
        ++size;
        if ((r.ballot[i] & P) != P) all = false;
      }
      if (all && size * r.budget >= static_cast<long long>(r.n) * c) f(P, N);
    }
  }
}

inline bool strongEjs(const Raw& r, std::uint32_t pi) {
  bool ok = true;
  forEachCohesive(r, [&](std::uint32_t P, std::uint32_t N) {
    for (int i = 0; i < r.n; ++i) {
      if (in(N, i) && share(r, pi, i) < share(r, P, i)) ok = false;
    }
  });
  return ok;
}

inline bool ejs(const Raw& r, std::uint32_t pi) {
  bool ok = true;
  forEachCohesive(r, [&](std::uint32_t P, std::uint32_t N) {
    bool some = false;
    for (int i = 0; i < r.n; ++i) {
      if (in(N, i) && share(r, pi, i) >= share(r, P, i)) some = true;
    }
    if (!some) ok = false;
  });
  return ok;
}

inline bool ejs1(const Raw& r, std::uint32_t pi) {
  bool ok = true;
  forEachCohesive(r, [&](std::uint32_t P, std::uint32_t N) {
    bool some = false;
    for (int i = 0; i < r.n && !some; ++i) {
      if (!in(N, i)) continue;
      for (int p = 0; p < r.m && !some; ++p) {
        if (share(r, pi | (1u << p), i) >= share(r, P, i)) some = true;
      }
    }
    if (!some) ok = false;
  });
  return ok;
}

inline bool localEjs(const Raw& r, std::uint32_t pi) {
  bool ok = true;
  forEachCohesive(r, [&](std::uint32_t P, std::uint32_t N) {
    for (int p = 0; p < r.m; ++p) {
      if (!in(P, p) || in(pi, p)) continue;
      bool allBelow = true;
      for (int i = 0; i < r.n; ++i) {
        if (in(N, i) && share(r, pi | (1u << p), i) >= share(r, P, i)) allBelow = false;
      }
      if (allBelow) ok = false;
    }
  });
  return ok;
}

/// Priceability by Fourier-Motzkin elimination. Rows are a.x <= b over
/// x = (alpha, payments of each supporter to each selected project).
/// Returns nullopt when the row count exceeds `rowCap`.
inline std::optional<bool> priceable(const Raw& r, std::uint32_t pi, std::size_t rowCap = 20000) {
  std::vector<std::pair<int, int>> pairs;  // (agent, project)
  for (int p = 0; p < r.m; ++p) {
    if (!in(pi, p)) continue;
    for (int i = 0; i < r.n; ++i) {
      if (in(r.ballot[i], p)) pairs.emplace_back(i, p);
    }
  }
  const std::size_t vars = pairs.size() + 1;
  using Row = std::pair<std::vector<Rational>, Rational>;
  std::vector<Row> rows;
  auto add = [&](std::vector<Rational> a, Rational b) { rows.emplace_back(std::move(a), std::move(b)); };
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Rational> a(vars);
    a[v] = -1;
    add(a, 0);  // nonnegativity
  }
  for (int i = 0; i < r.n; ++i) {  // spent_i <= alpha
    std::vector<Rational> a(vars);
    a[0] = -1;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k].first == i) a[k + 1] = 1;
    }
    add(a, 0);
  }
  for (int p = 0; p < r.m; ++p) {
    if (in(pi, p)) {  // collected == cost, as two inequalities
      std::vector<Rational> a(vars);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].second == p) a[k + 1] = 1;
      }
      std::vector<Rational> neg(vars);
      for (std::size_t v = 0; v < vars; ++v) neg[v] = -a[v];
      add(a, Rational(r.cost[p]));
      add(neg, Rational(-r.cost[p]));
    } else {  // unspent of supporters <= cost
      std::vector<Rational> a(vars);
      for (int i = 0; i < r.n; ++i) {
        if (!in(r.ballot[i], p)) continue;
        a[0] += 1;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          if (pairs[k].first == i) a[k + 1] -= 1;
        }
      }
      add(a, Rational(r.cost[p]));
    }
  }
  auto normalise = [](Row& row) {
    Rational scale = 0;
    for (const auto& a : row.first) {
      if (a != 0) {
        scale = a < 0 ? Rational(-a) : a;
        break;
      }
    }
    if (scale == 0) return;
    for (auto& a : row.first) a /= scale;
    row.second /= scale;
  };
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<Row> pos, neg, next;
    for (auto& row : rows) {
      if (row.first[v] > 0) {
        pos.push_back(row);
      } else if (row.first[v] < 0) {
        neg.push_back(row);
      } else {
        next.push_back(row);
      }
    }
    for (const auto& P : pos) {
      for (const auto& N : neg) {
        const Rational fp = P.first[v];
        const Rational fn = -N.first[v];
        Row combined{std::vector<Rational>(vars), P.second * fn + N.second * fp};
        for (std::size_t k = 0; k < vars; ++k) combined.first[k] = P.first[k] * fn + N.first[k] * fp;
        combined.first[v] = 0;
        next.push_back(std::move(combined));
      }
    }
    for (auto& row : next) normalise(row);
    std::sort(next.begin(), next.end(), [](const Row& a, const Row& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second < b.second;
    });
    // Among rows with equal left side only the tightest bound matters.
    std::vector<Row> kept;
    for (auto& row : next) {
      if (!kept.empty() && kept.back().first == row.first) continue;
      kept.push_back(std::move(row));
    }
    rows = std::move(kept);
    if (rows.size() > rowCap) return std::nullopt;
  }
  for (const auto& row : rows) {
    if (row.second < 0) return false;
  }
  return true;
}

/// Minimal affordable alpha by trying every set of capped supporters.
inline std::optional<Rational> mesAlpha(const Raw& r, const std::vector<Rational>& load, int p,
                                        int kind /*0 share, 1 card, 2 cost*/) {
  const Rational perAgent = Rational(r.budget) / r.n;
  const Rational basis = kind == 0 ? Rational(r.cost[p]) / supporters(r, p)
                         : kind == 1 ? Rational(1)
                                     : Rational(r.cost[p]);
  std::vector<int> sup;
  for (int i = 0; i < r.n; ++i) {
    if (in(r.ballot[i], p)) sup.push_back(i);
  }
  std::optional<Rational> best;
  for (std::uint32_t capped = 0; capped < (1u << sup.size()); ++capped) {
    Rational fixed = 0;
    int free = 0;
    for (std::size_t k = 0; k < sup.size(); ++k) {
      if (in(capped, static_cast<int>(k))) {
        fixed += perAgent - load[sup[k]];
      } else {
        ++free;
      }
    }
    if (free == 0) continue;
    const Rational alpha = (Rational(r.cost[p]) - fixed) / (basis * free);
    if (alpha < 0) continue;
    Rational total = 0;
    for (int i : sup) {
      const Rational rem = perAgent - load[i];
      total += std::min(rem, Rational(alpha * basis));
    }
    if (total == Rational(r.cost[p]) && (!best || alpha < *best)) best = alpha;
  }
  return best;
}

/// Full MES run with the approval-count then index tie-break.
inline std::uint32_t mes(const Raw& r, int kind) {
  std::vector<Rational> load(r.n);
  const Rational perAgent = Rational(r.budget) / r.n;
  std::uint32_t selected = 0;
  while (true) {
    int bestP = -1;
    Rational bestAlpha;
    for (int p = 0; p < r.m; ++p) {
      if (in(selected, p)) continue;
      auto a = mesAlpha(r, load, p, kind);
      if (!a) continue;
      const bool better = bestP < 0 || *a < bestAlpha ||
                          (*a == bestAlpha && supporters(r, p) > supporters(r, bestP));
      if (better) {
        bestP = p;
        bestAlpha = *a;
      }
    }
    if (bestP < 0) return selected;
    const Rational basis = kind == 0 ? Rational(r.cost[bestP]) / supporters(r, bestP)
                           : kind == 1 ? Rational(1)
                                       : Rational(r.cost[bestP]);
    for (int i = 0; i < r.n; ++i) {
      if (in(r.ballot[i], bestP)) load[i] += std::min(perAgent - load[i], Rational(bestAlpha * basis));
    }
    selected |= 1u << bestP;
  }
}

/// Every feasible allocation, scanning all 2^m masks.
inline std::vector<std::uint32_t> feasible(const Raw& r) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << r.m); ++s) {
    if (costOf(r, s) <= r.budget) out.push_back(s);
  }
  return out;
}

inline Rational cappedShareSum(const Raw& r, std::uint32_t pi) {
  const Rational perAgent = Rational(r.budget) / r.n;
  Rational total = 0;
  for (int i = 0; i < r.n; ++i) total += std::min(share(r, pi, i), perAgent);
  return total;
}

inline Rational l1Average(const Raw& r, std::uint32_t pi) {
  Rational total = 0;
  for (int i = 0; i < r.n; ++i) total += abs(share(r, pi, i) - fairShare(r, i));
  return total / r.n;
}

inline Rational cappedRatioAverage(const Raw& r, std::uint32_t pi) {
  Rational total = 0;
  for (int i = 0; i < r.n; ++i) {
    const Rational f = fairShare(r, i);
    total += f == 0 ? Rational(1) : std::min(Rational(share(r, pi, i) / f), Rational(1));
  }
  return total / r.n;
}

}  // namespace pbshare::oracle
