#include "modcirc/construct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "modcirc/error.hpp"

namespace modcirc {

namespace {

void require_distinct_primes(std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p) || !is_prime(q) || p == q) {
    throw Error(ErrorCode::InvalidArgument, "p and q must be distinct primes (got " +
                                                std::to_string(p) + ", " + std::to_string(q) +
                                                ")");
  }
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// Accepting residues of the gate computing b(sum + c mod p) inside Z_m.
std::vector<std::uint64_t> b_gate_accept(std::uint64_t m, std::uint64_t p, std::uint64_t c) {
  const std::uint64_t scale = m / p;
  const std::uint64_t forbidden = (p - c % p) % p;
  std::vector<std::uint64_t> accept;
  for (std::uint64_t t = 0; t < p; ++t) {
    if (t != forbidden) accept.push_back(scale * t % m);
  }
  std::sort(accept.begin(), accept.end());
  return accept;
}

// Calls f(beta) for every vector in the orbit, in lexicographic order.
void for_each_beta(std::size_t arity, std::span<const std::size_t> counts,
                   const std::function<void(const std::vector<std::uint64_t> &)> &f) {
  std::vector<std::uint64_t> beta;
  std::size_t nonzero = 0;
  for (std::size_t a = 0; a < counts.size(); ++a) nonzero += counts[a];
  beta.assign(arity - nonzero, 0);
  for (std::size_t a = 0; a < counts.size(); ++a) beta.insert(beta.end(), counts[a], a + 1);
  do {
    f(beta);
  } while (std::next_permutation(beta.begin(), beta.end()));
}

// Compositions of d into `parts` non-negative entries, (d, 0, ..., 0) first.
void compositions(std::size_t d, std::size_t parts,
                  std::vector<std::vector<std::size_t>> &out) {
  std::vector<std::size_t> cur(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (parts == 0) return;
  rec(0, d);
}

// Number of orbit members beta with beta . x_w + c != 0 (mod p), reduced mod q,
// where x_w has w leading ones.
std::uint64_t orbit_column_value(std::size_t arity, std::uint64_t p, std::uint64_t q,
                                 const std::vector<std::size_t> &counts, std::uint64_t c,
                                 std::size_t w, const BinomialTable &binom) {
  const std::size_t zeros = arity - w;
  std::uint64_t total = 0;
  std::vector<std::size_t> split(counts.size(), 0);
  std::function<void(std::size_t, std::size_t, std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t a, std::size_t ones_left, std::size_t zeros_left, std::uint64_t residue,
          std::uint64_t ways) {
        if (ways == 0) return;
        if (a == counts.size()) {
          if ((residue + c) % p != 0) total = (total + ways) % q;
          return;
        }
        for (std::size_t j = 0; j <= counts[a]; ++j) {
          const std::size_t rest = counts[a] - j;
          if (j > ones_left || rest > zeros_left) continue;
          std::uint64_t next = ways * binom(ones_left, j) % q * binom(zeros_left, rest) % q;
          rec(a + 1, ones_left - j, zeros_left - rest, (residue + (a + 1) * j) % p, next);
        }
      };
  rec(0, w, zeros, 0, 1 % q);
  return total;
}

// Solves A x = b over the prime field Z_q; free variables are zero.
std::optional<std::vector<std::uint64_t>> solve_mod_prime(
    std::vector<std::vector<std::uint64_t>> a, std::vector<std::uint64_t> b, std::uint64_t q) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pr = r;
    while (pr < rows && a[pr][col] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[r], a[pr]);
    std::swap(b[r], b[pr]);
    const std::uint64_t inv = pow_mod(a[r][col], q - 2, q);
    for (auto &v : a[r]) v = v * inv % q;
    b[r] = b[r] * inv % q;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col] == 0) continue;
      const std::uint64_t f = a[i][col];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = (a[i][k] + (q - f) * a[r][k]) % q;
      b[i] = (b[i] + (q - f) * b[r]) % q;
    }
    pivots.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<std::uint64_t> x(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

struct TopClass {
  std::uint64_t p;
  std::vector<std::size_t> counts;
  std::uint64_t c;
  std::uint64_t mult;
};

// b-gates of the plan after merging equal (p, beta, c) across parts.
std::vector<TopClass> top_classes(const AndDepth2Plan &plan) {
  const std::uint64_t m = plan.modulus;
  std::map<std::tuple<std::uint64_t, std::vector<std::size_t>, std::uint64_t>, std::uint64_t>
      merged;
  for (const auto &part : plan.parts) {
    const std::uint64_t scale = m / part.prime;
    for (const auto &o : part.expression.orbits) {
      auto &slot = merged[{part.aux_prime, o.residue_counts, o.c}];
      slot = (slot + scale * o.alpha) % m;
    }
  }
  std::vector<TopClass> out;
  for (const auto &[key, mult] : merged) {
    if (mult == 0) continue;
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mult});
  }
  return out;
}

}  // namespace

std::uint64_t eval_zpq(const ZpqExpression &e, std::span<const std::uint8_t> bits) {
  if (bits.size() != e.arity) {
    throw Error(ErrorCode::InvalidAssignment, "assignment length " + std::to_string(bits.size()) +
                                                  " differs from arity " +
                                                  std::to_string(e.arity));
  }
  std::uint64_t total = 0;
  for (const auto &t : e.terms) {
    std::uint64_t inner = t.c % e.p;
    for (std::size_t i = 0; i < e.arity; ++i) {
      if (bits[i]) inner = (inner + t.beta[i]) % e.p;
    }
    if (inner != 0) total = (total + t.alpha) % e.q;
  }
  return total;
}

ZpqExpression aggregate(const ZpqExpression &e) {
  std::map<std::pair<std::vector<std::uint64_t>, std::uint64_t>, std::uint64_t> sums;
  for (const auto &t : e.terms) {
    if (t.beta.size() != e.arity) {
      throw Error(ErrorCode::InvalidArgument, "term beta length differs from arity");
    }
    std::vector<std::uint64_t> beta = t.beta;
    bool constant = true;
    for (auto &b : beta) {
      b %= e.p;
      if (b) constant = false;
    }
    std::uint64_t c = t.c % e.p;
    if (constant) {
      if (c == 0) continue;
      c = 1;
    }
    auto &slot = sums[{std::move(beta), c}];
    slot = (slot + t.alpha % e.q) % e.q;
  }
  ZpqExpression out{e.p, e.q, e.arity, {}, e.symmetric_scheme};
  for (auto &[key, alpha] : sums) {
    if (alpha != 0) out.terms.push_back({alpha, key.first, key.second});
  }
  return out;
}

bool has_symmetric_coefficients(const ZpqExpression &e) {
  auto agg = aggregate(e);
  struct Seen {
    std::uint64_t alpha;
    std::vector<std::size_t> counts;
    BigInt members;
  };
  std::map<std::pair<std::vector<std::size_t>, std::uint64_t>, Seen> orbits;
  for (const auto &t : agg.terms) {
    std::vector<std::size_t> counts(e.p - 1, 0);
    for (auto b : t.beta) {
      if (b) ++counts[b - 1];
    }
    auto [it, inserted] = orbits.try_emplace({counts, t.c}, Seen{t.alpha, counts, 0});
    if (it->second.alpha != t.alpha) return false;
    it->second.members += 1;
  }
  for (const auto &[key, seen] : orbits) {
    if (seen.members != orbit_size(e.arity, seen.counts)) return false;
  }
  return true;
}

OpenCircuit compile_zpq(const ZpqExpression &e, std::uint64_t m) {
  require_distinct_primes(e.p, e.q);
  if (m % e.p != 0 || m % e.q != 0) {
    throw Error(ErrorCode::IncompatibleModulus,
                "p=" + std::to_string(e.p) + " and q=" + std::to_string(e.q) +
                    " must both divide m=" + std::to_string(m));
  }
  auto agg = aggregate(e);
  OpenCircuit oc{Circuit::with_inputs(m, e.arity), {}, e.q};
  const std::uint64_t scale = m / e.p;
  for (const auto &t : agg.terms) {
    std::vector<Edge> kids;
    for (std::size_t i = 0; i < e.arity; ++i) {
      const std::uint64_t mult = scale * t.beta[i] % m;
      if (mult) kids.push_back({static_cast<GateId>(i), mult});
    }
    GateId g = oc.body.add_mod(b_gate_accept(m, e.p, t.c), std::move(kids));
    oc.outputs.push_back({g, t.alpha});
  }
  return oc;
}

std::size_t TermOrbit::support() const {
  return std::accumulate(residue_counts.begin(), residue_counts.end(), std::size_t{0});
}

BigInt orbit_size(std::size_t arity, std::span<const std::size_t> residue_counts) {
  BigInt total = 1;
  std::size_t left = arity;
  for (auto k : residue_counts) {
    if (k > left) return 0;
    total *= binomial(left, k);
    left -= k;
  }
  return total;
}

BigInt SymmetricZpq::term_count() const {
  BigInt total = 0;
  for (const auto &o : orbits) total += orbit_size(arity, o.residue_counts);
  return total;
}

std::size_t SymmetricZpq::max_support() const {
  std::size_t best = 0;
  for (const auto &o : orbits) best = std::max(best, o.support());
  return best;
}

ZpqExpression SymmetricZpq::expand(std::uint64_t term_cap) const {
  if (term_count() > term_cap) {
    throw Error(ErrorCode::TooLarge, "expression has " + term_count().str() +
                                         " terms, cap is " + std::to_string(term_cap));
  }
  ZpqExpression e{p, q, arity, {}, true};
  for (const auto &o : orbits) {
    for_each_beta(arity, o.residue_counts,
                  [&](const std::vector<std::uint64_t> &beta) {
                    e.terms.push_back({o.alpha, beta, o.c});
                  });
  }
  return e;
}

SymmetricZpq build_tq_orbits(std::uint64_t p, std::uint64_t q, unsigned nu, std::size_t arity) {
  require_distinct_primes(p, q);
  if (nu == 0) throw Error(ErrorCode::InvalidArgument, "nu must be positive");

  // q^nu, or "larger than any zero count" when it overflows.
  const auto modulus_power = checked_pow(q, nu);
  std::vector<std::uint64_t> target(arity + 1);
  for (std::size_t w = 0; w <= arity; ++w) {
    const std::uint64_t zeros = arity - w;
    const bool divisible = modulus_power ? zeros % *modulus_power == 0 : zeros == 0;
    target[w] = divisible ? 0 : 1;
  }

  BinomialTable binom(arity, q);
  std::vector<TermOrbit> columns;
  std::vector<std::vector<std::uint64_t>> matrix(arity + 1);
  auto add_column = [&](TermOrbit o) {
    for (std::size_t w = 0; w <= arity; ++w) {
      matrix[w].push_back(orbit_column_value(arity, p, q, o.residue_counts, o.c, w, binom));
    }
    columns.push_back(std::move(o));
  };

  add_column({std::vector<std::size_t>(p - 1, 0), 1, 0});
  for (std::size_t degree = 0; degree <= arity; ++degree) {
    if (degree > 0) {
      std::vector<std::vector<std::size_t>> types;
      compositions(degree, p - 1, types);
      for (auto &t : types) {
        for (std::uint64_t c = 0; c < p; ++c) add_column({t, c, 0});
      }
    }
    if (auto x = solve_mod_prime(matrix, target, q)) {
      SymmetricZpq out{p, q, arity, {}};
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if ((*x)[i] == 0) continue;
        TermOrbit o = columns[i];
        o.alpha = (*x)[i];
        out.orbits.push_back(std::move(o));
      }
      return out;
    }
  }
  throw Error(ErrorCode::PreconditionFailed,
              "no symmetric expression found for t with q^nu=" + std::to_string(q) + "^" +
                  std::to_string(nu) + ", n=" + std::to_string(arity));
}

ZpqExpression build_tq(std::uint64_t p, std::uint64_t q, unsigned nu, std::size_t arity) {
  return build_tq_orbits(p, q, nu, arity).expand();
}

unsigned choose_nu(std::uint64_t prime, unsigned r, std::uint64_t n) {
  if (r == 0 || prime < 2) throw Error(ErrorCode::InvalidArgument, "bad prime or r");
  for (unsigned nu = 1;; ++nu) {
    auto bound = checked_pow(prime, r * nu);
    if (!bound || n < *bound) return nu;
  }
}

BigInt AndDepth2Plan::planned_gate_count() const {
  BigInt total = arity + 1;
  for (const auto &cls : top_classes(*this)) total += orbit_size(arity, cls.counts);
  return total;
}

BigInt AndDepth2Plan::planned_size() const {
  BigInt total = arity + 1;
  for (const auto &cls : top_classes(*this)) {
    const std::uint64_t scale = modulus / cls.p;
    std::uint64_t per_gate = cls.mult;
    for (std::size_t a = 0; a < cls.counts.size(); ++a) {
      per_gate += cls.counts[a] * (scale * (a + 1) % modulus);
    }
    total += orbit_size(arity, cls.counts) * (1 + per_gate);
  }
  return total;
}

AndDepth2Plan plan_and_depth2(std::uint64_t m, std::size_t n) {
  auto fac = factorize(m);
  if (fac.is_prime_power()) {
    throw Error(ErrorCode::UnsupportedModulus,
                "m=" + std::to_string(m) + " is a prime power; need at least two prime factors");
  }
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "arity must be positive");
  const auto r = static_cast<unsigned>(fac.distinct_primes());
  AndDepth2Plan plan;
  plan.modulus = m;
  plan.arity = n;
  plan.factorization = fac;
  BigInt product = 1;
  for (const auto &pp : fac.primes) {
    const unsigned nu = choose_nu(pp.prime, r, n);
    std::uint64_t aux = 0;
    for (const auto &other : fac.primes) {
      if (other.prime != pp.prime) {
        aux = other.prime;
        break;
      }
    }
    product *= boost::multiprecision::pow(BigInt(pp.prime), nu);
    plan.parts.push_back({pp.prime, nu, aux, build_tq_orbits(aux, pp.prime, nu, n)});
  }
  if (product <= n) {
    throw Error(ErrorCode::PreconditionFailed, "prod p_j^nu_j must exceed n");
  }
  return plan;
}

GateId instantiate_and_depth2(CircuitBuilder &builder, const AndDepth2Plan &plan,
                              std::span<const GateId> inputs) {
  if (inputs.size() != plan.arity) {
    throw Error(ErrorCode::InvalidArgument, "plan arity differs from number of inputs");
  }
  const std::uint64_t m = plan.modulus;
  std::vector<Edge> top;
  for (const auto &cls : top_classes(plan)) {
    const std::uint64_t scale = m / cls.p;
    const auto accept = b_gate_accept(m, cls.p, cls.c);
    for_each_beta(plan.arity, cls.counts, [&](const std::vector<std::uint64_t> &beta) {
      std::vector<Edge> kids;
      for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i]) kids.push_back({inputs[i], scale * beta[i] % m});
      }
      top.push_back({builder.mod_gate(accept, std::move(kids)), cls.mult});
    });
  }
  return builder.mod_gate({0}, std::move(top));
}

Circuit build_and_depth2(std::uint64_t m, std::size_t n) {
  auto plan = plan_and_depth2(m, n);
  CircuitBuilder builder(m, n);
  std::vector<GateId> inputs(n);
  std::iota(inputs.begin(), inputs.end(), GateId{0});
  return builder.finish(instantiate_and_depth2(builder, plan, inputs));
}

Circuit build_and_nested(std::uint64_t m, const BlockTree &tree) {
  std::map<std::size_t, AndDepth2Plan> plans;
  for (auto k : tree.branching()) {
    if (!plans.count(k)) plans.emplace(k, plan_and_depth2(m, k));
  }
  CircuitBuilder builder(m, tree.leaf_count());
  std::vector<GateId> current(tree.leaf_count());
  std::iota(current.begin(), current.end(), GateId{0});
  for (auto k : tree.branching()) {
    const auto &plan = plans.at(k);
    std::vector<GateId> next;
    for (std::size_t i = 0; i < current.size(); i += k) {
      next.push_back(instantiate_and_depth2(
          builder, plan, std::span<const GateId>(current).subspan(i, k)));
    }
    current = std::move(next);
  }
  return builder.finish(current.front());
}

}  // namespace modcirc
