// Copyright 2026 The lcel Authors.
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

#include "lcel/combinatorics.hpp"

#include <algorithm>
#include <map>

#include "lcel/calculus.hpp"
#include "lcel/errors.hpp"
#include "lcel/normalize.hpp"

namespace lcel {
namespace {

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

void enumerate_exponents(int s, int j, int remaining_weight, int remaining_count,
                         std::vector<int>& c, std::vector<BellTerm>& out) {
  if (j == 0) {
    if (remaining_weight == 0 && remaining_count == 0) {
      mpz_class den = 1;
      for (int k = 1; k <= s; ++k) {
        mpz_class fk = factorial(k);
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), fk.get_mpz_t(), static_cast<unsigned long>(c[k - 1]));
        den *= factorial(c[k - 1]) * pw;
      }
      Rational coef(factorial(s), den);
      coef.canonicalize();
      out.push_back(BellTerm{coef, c});
    }
    return;
  }
  for (int cj = std::min(remaining_weight / j, remaining_count); cj >= 0; --cj) {
    c[j - 1] = cj;
    enumerate_exponents(s, j - 1, remaining_weight - j * cj, remaining_count - cj, c, out);
  }
  c[j - 1] = 0;
}

const char kIndexLetters[] = "ijklpruv";

std::string letter(int k) { return std::string(1, kIndexLetters[k]); }

std::string phi_symbol(const std::string& indices, Format format) {
  return format == Format::kLatex ? "\\varphi_{" + indices + "}" : "phi_" + indices;
}

std::string jet_symbol(int order, const std::string& index, Format format) {
  if (format == Format::kLatex) {
    switch (order) {
      case 1: return "\\dot{q}^{" + index + "}";
      case 2: return "\\ddot{q}^{" + index + "}";
      case 3: return "\\dddot{q}^{" + index + "}";
      default: return "q^{" + index + "}_{(" + std::to_string(order) + ")}";
    }
  }
  if (order <= 3) return "q" + std::string(static_cast<std::size_t>(order), '\'') + "^" + index;
  return "q(" + std::to_string(order) + ")^" + index;
}

std::string join_factors(const std::vector<std::string>& factors, Format format) {
  std::string out;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k > 0) out += format == Format::kLatex ? " " : "*";
    out += factors[k];
  }
  return out;
}

std::string rational_string(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str()
                          : r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace

std::vector<Partition> set_partitions(int m) {
  if (m < 1 || m > kMaxPartitionSize) {
    throw InvalidArgument("set_partitions: m must lie in [1, " + std::to_string(kMaxPartitionSize) + "]");
  }
  const auto n = static_cast<std::size_t>(m);
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);  // max(a[0..k-1])
  std::vector<Partition> out;
  for (;;) {
    Partition p;
    const int blocks = *std::max_element(a.begin(), a.end()) + 1;
    p.blocks.resize(static_cast<std::size_t>(blocks));
    for (std::size_t k = 0; k < n; ++k) {
      p.blocks[static_cast<std::size_t>(a[k])].push_back(static_cast<int>(k) + 1);
    }
    out.push_back(std::move(p));

    std::size_t k = n;
    while (k > 1 && a[k - 1] > prefix_max[k - 1]) --k;
    if (k <= 1) break;
    ++a[k - 1];
    for (std::size_t j = k; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = std::max(prefix_max[j - 1], a[j - 1]);
    }
  }
  return out;
}

std::vector<int> BellTerm::slot_orders() const {
  std::vector<int> orders;
  for (int j = static_cast<int>(exponents.size()); j >= 1; --j) {
    for (int k = 0; k < exponents[static_cast<std::size_t>(j - 1)]; ++k) orders.push_back(j);
  }
  return orders;
}

std::vector<BellTerm> bell_terms(int s, int m) {
  if (s < 1 || s > kMaxBellOrder) {
    throw InvalidArgument("bell_terms: s must lie in [1, " + std::to_string(kMaxBellOrder) + "]");
  }
  if (m < 1 || m > s) throw InvalidArgument("bell_terms: m must lie in [1, s]");
  std::vector<int> c(static_cast<std::size_t>(s), 0);
  std::vector<BellTerm> out;
  enumerate_exponents(s, s, s, m, c, out);
  return out;
}

Expr bell_polynomial(int s, int m, std::span<const int> slot_indices, SlotPairing pairing) {
  if (static_cast<int>(slot_indices.size()) != m) {
    throw InvalidArgument("bell_polynomial: need one coordinate index per slot");
  }
  std::vector<Expr> terms;
  for (const BellTerm& t : bell_terms(s, m)) {
    std::vector<int> orders = t.slot_orders();
    if (pairing == SlotPairing::kLowestFirst) std::reverse(orders.begin(), orders.end());
    std::vector<Expr> factors{constant(t.coefficient)};
    for (std::size_t k = 0; k < orders.size(); ++k) factors.push_back(jet(slot_indices[k], orders[k]));
    terms.push_back(product(std::move(factors)));
  }
  return normalize(sum(std::move(terms)));
}

Expr phi(const ConformalFactor& sigma, std::span<const int> indices) {
  const int m = static_cast<int>(indices.size());
  std::vector<Expr> terms;
  for (const Partition& p : set_partitions(m)) {
    std::vector<Expr> factors{integer(p.blocks.size() % 2 == 0 ? 1 : -1)};
    for (const auto& block : p.blocks) {
      std::vector<int> idx;
      idx.reserve(block.size());
      for (int slot : block) idx.push_back(indices[static_cast<std::size_t>(slot - 1)]);
      factors.push_back(sigma.derivative(std::move(idx)));
    }
    terms.push_back(product(std::move(factors)));
  }
  return normalize(sum(std::move(terms)));
}

Expr calB(int s, const ConformalFactor& sigma, const JetSpace& space, SlotPairing pairing) {
  if (s < 0 || s > kMaxBellOrder) {
    throw InvalidArgument("calB: s must lie in [0, " + std::to_string(kMaxBellOrder) + "]");
  }
  if (s > space.max_jet() - 1) throw JetOrderOverflow("calB: s exceeds max_jet - 1");
  if (s == 0) return integer(1);
  const int dim = space.dim();
  std::vector<Expr> terms;
  for (int m = 1; m <= s; ++m) {
    const std::vector<BellTerm> bts = bell_terms(s, m);
    // Phi_m is symmetric in its slots, so one evaluation per index multiset.
    std::map<std::vector<int>, Expr> phi_by_multiset;
    std::vector<int> idx(static_cast<std::size_t>(m), 1);
    for (;;) {
      std::vector<int> key = idx;
      std::sort(key.begin(), key.end());
      auto it = phi_by_multiset.find(key);
      if (it == phi_by_multiset.end()) it = phi_by_multiset.emplace(key, phi(sigma, idx)).first;
      const Expr& phi_m = it->second;
      if (!phi_m.is_zero()) {
        for (const BellTerm& t : bts) {
          std::vector<int> orders = t.slot_orders();
          if (pairing == SlotPairing::kLowestFirst) std::reverse(orders.begin(), orders.end());
          std::vector<Expr> factors{constant(t.coefficient), phi_m};
          for (std::size_t k = 0; k < orders.size(); ++k) factors.push_back(jet(idx[k], orders[k]));
          terms.push_back(product(std::move(factors)));
        }
      }
      int pos = m - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim) {
        idx[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
  return normalize(sum(std::move(terms)));
}

Expr calB_oracle(int s, const ConformalFactor& sigma, const JetSpace& space) {
  if (s < 0) throw InvalidArgument("calB_oracle: s must be non-negative");
  if (s > space.max_jet() - 1) throw JetOrderOverflow("calB_oracle: s exceeds max_jet - 1");
  const Expr weight = exp(-sigma.sigma());
  return normalize(exp(sigma.sigma()) * total_derivative(weight, space, s));
}

std::string phi_index_form(int m, Format format) {
  std::vector<Partition> parts = set_partitions(m);
  std::stable_sort(parts.begin(), parts.end(), [](const Partition& a, const Partition& b) {
    return a.blocks.size() > b.blocks.size();
  });
  std::string out;
  bool first = true;
  for (Partition& p : parts) {
    std::stable_sort(p.blocks.begin(), p.blocks.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<std::string> factors;
    for (const auto& block : p.blocks) {
      std::string idx;
      for (int slot : block) idx += letter(slot - 1);
      factors.push_back(phi_symbol(idx, format));
    }
    const bool negative = p.blocks.size() % 2 == 1;
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += join_factors(factors, format);
    first = false;
  }
  return out;
}

std::string bell_index_form(int s, int m, Format format) {
  std::string out;
  bool first = true;
  for (const BellTerm& t : bell_terms(s, m)) {
    std::vector<std::string> factors;
    if (t.coefficient != 1) {
      factors.push_back(format == Format::kLatex && t.coefficient.get_den() != 1
                            ? "\\frac{" + t.coefficient.get_num().get_str() + "}{" +
                                  t.coefficient.get_den().get_str() + "}"
                            : rational_string(t.coefficient));
    }
    const std::vector<int> orders = t.slot_orders();
    for (std::size_t k = 0; k < orders.size(); ++k) {
      factors.push_back(jet_symbol(orders[k], letter(static_cast<int>(k)), format));
    }
    out += (first ? "" : " + ") + join_factors(factors, format);
    first = false;
  }
  return out;
}

std::string calB_index_form(int s, Format format) {
  if (s == 0) return "1";
  std::string out;
  bool first = true;
  for (int m = 1; m <= s; ++m) {
    const std::string phi_m = phi_index_form(m, format);
    for (const BellTerm& t : bell_terms(s, m)) {
      std::vector<std::string> factors;
      const bool single = m == 1;
      std::string sign = single ? "-" : "+";
      if (t.coefficient != 1) factors.push_back(rational_string(t.coefficient));
      if (single) {
        factors.push_back(phi_symbol(letter(0), format));
      } else {
        factors.push_back(format == Format::kLatex ? "\\left(" + phi_m + "\\right)" : "(" + phi_m + ")");
      }
      const std::vector<int> orders = t.slot_orders();
      for (std::size_t k = 0; k < orders.size(); ++k) {
        factors.push_back(jet_symbol(orders[k], letter(static_cast<int>(k)), format));
      }
      if (first) {
        out += sign == "-" ? "-" : "";
      } else {
        out += " " + sign + " ";
      }
      out += join_factors(factors, format);
      first = false;
    }
  }
  return out;
}

}  // namespace lcel
