// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include "../support/oracles.hpp"
#include "turanlab/errors.hpp"
#include "turanlab/jump.hpp"
#include "turanlab/lagrangian.hpp"
#include "turanlab/named.hpp"
#include "turanlab/polynomial.hpp"
#include "turanlab/sequence.hpp"
#include "turanlab/turan.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace turanlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            if (!ok)
                detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    if (!c.ok)
        ++failures;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << id << " " << title;
    const auto d = c.detail.str();
    if (!d.empty())
        std::cout << " [" << d << "]";
    std::cout << std::endl;
}

std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

// Polynomial form computed term by term, independent of the library.
double direct_form(const Hypergraph& h, const std::vector<double>& x) {
    double total = 0;
    for (const auto& e : h.edges()) {
        double term = std::tgamma(static_cast<double>(e.size()) + 1);
        for (int v : e)
            term *= x[static_cast<std::size_t>(v)];
        total += term;
    }
    return total;
}

std::vector<double> random_simplex(std::mt19937_64& rng, int n) {
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    double s = 0;
    for (auto& v : x)
        s += v = ex(rng);
    for (auto& v : x)
        v /= s;
    return x;
}

bool listed_weak(const Rational& a) {
    // 0, 1/2, ..., k/(k+1), ..., 1, 9/8, ..., 1 + k/(4(k+1)), ..., 5/4, 3/2, ..., (2k+1)/(k+1), ..., 2
    if (a == 1 || a == Rational(5, 4) || a == 2)
        return true;
    auto is_natural = [](const Rational& r) { return r >= 0 && denominator(r) == 1; };
    if (a >= 0 && a < 1 && is_natural(1 / (1 - a) - 1))
        return true; // a = k/(k+1), k = 1/(1-a) - 1
    if (a > 1 && a < Rational(5, 4)) {
        const Rational u = 4 * (a - 1); // k/(k+1)
        if (is_natural(1 / (1 - u) - 1) && 1 / (1 - u) - 1 >= 1)
            return true;
    }
    if (a > 1 && a < 2) {
        const Rational u = a - 1; // k/(k+1)
        if (is_natural(1 / (1 - u) - 1) && 1 / (1 - u) - 1 >= 1)
            return true;
    }
    return false;
}

} // namespace

int main() {
    const EdgeTypeSet k2{2}, k12{1, 2};

    criterion(1, "Lagrangian of complete 2-graphs K_t is (t-1)/t for t = 2..8 within 1e-8, each under 1 s",
              [&](Check& c) {
                  double worst = 0, slowest = 0;
                  for (int t = 2; t <= 8; ++t) {
                      const auto start = Clock::now();
                      const auto r = maximize(named::complete(t, k2));
                      slowest = std::max(slowest, seconds_since(start));
                      worst = std::max(worst, std::fabs(r.value - (t - 1.0) / t));
                  }
                  c.require(worst <= 1e-8, "max error " + num(worst));
                  c.require(slowest < 1.0, "slowest solve " + num(slowest) + " s");
                  c.detail << (c.ok ? "" : "; ") << "max error " << num(worst) << ", slowest " << num(slowest)
                           << " s";
              });

    criterion(2, "Lagrangian of the chain {0},{0,1} is 9/8, certified exactly at (3/4, 1/4), under 1 s",
              [&](Check& c) {
                  const auto start = Clock::now();
                  const auto r = maximize(named::chain());
                  const double elapsed = seconds_since(start);
                  c.require(std::fabs(r.value - 1.125) <= 1e-12, "value " + num(r.value));
                  c.require(r.certified_lower_bound && *r.certified_lower_bound == Rational(9, 8),
                            "certificate is not 9/8");
                  c.require(r.certificate_point &&
                                r.certificate_point->weights() == std::vector<Rational>{Rational(3, 4), Rational(1, 4)},
                            "certificate point is not (3/4, 1/4)");
                  c.require(certify_at(named::chain(), RationalPoint({Rational(3, 4), Rational(1, 4)})) ==
                                Rational(9, 8),
                            "exact value at (3/4, 1/4) is not 9/8");
                  c.require(elapsed < 1.0, "took " + num(elapsed) + " s");
              });

    criterion(3, "Lagrangian of K_2^{1,2} is exactly 3/2, certified at (1/2, 1/2)", [&](Check& c) {
        const auto h = named::complete(2, k12);
        const auto r = maximize(h);
        c.require(r.certified_lower_bound && *r.certified_lower_bound == Rational(3, 2), "certificate is not 3/2");
        c.require(r.certificate_point &&
                      r.certificate_point->weights() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
                  "certificate point is not (1/2, 1/2)");
        c.require(certify_at(h, RationalPoint({Rational(1, 2), Rational(1, 2)})) == Rational(3, 2),
                  "exact value at (1/2, 1/2) is not 3/2");
        // Upper bound: x0 + x1 + 2 x0 x1 = 1 + 2 x0 x1 <= 3/2 on the simplex.
        c.require(std::fabs(r.value - 1.5) <= 1e-12, "value " + num(r.value));
    });

    criterion(4, "Lagrangian of K_t^{1,2} is 2 - 1/t for t = 2..6 within 1e-8", [&](Check& c) {
        double worst = 0;
        for (int t = 2; t <= 6; ++t)
            worst = std::max(worst, std::fabs(maximize(named::complete(t, k12)).value - (2.0 - 1.0 / t)));
        c.require(worst <= 1e-8, "max error " + num(worst));
        if (c.ok)
            c.detail << "max error " << num(worst);
    });

    criterion(5, "K_t^* at x0 = (t+1)/(2t), rest 1/(2t) gives exactly 5/4 - 1/(4t) for t = 3..8; "
                 "maximize(K_3^*) = 7/6 within 1e-8 against a step-1e-4 grid",
              [&](Check& c) {
                  for (int t = 3; t <= 8; ++t) {
                      std::vector<Rational> x(static_cast<std::size_t>(t), Rational(1, 2 * t));
                      x[0] = Rational(t + 1, 2 * t);
                      c.require(certify_at(named::k_star(t), RationalPoint(x)) == Rational(5, 4) - Rational(1, 4 * t),
                                "exact value wrong at t = " + std::to_string(t));
                  }
                  // Two free coordinates (x0, x1), x2 = 1 - x0 - x1.
                  const auto h = named::k_star(3);
                  const int steps = 10000;
                  double grid = -1;
                  std::vector<double> x(3);
                  for (int i = 0; i <= steps; ++i)
                      for (int j = 0; i + j <= steps; ++j) {
                          x[0] = i / double(steps);
                          x[1] = j / double(steps);
                          x[2] = std::max(0.0, 1 - x[0] - x[1]);
                          grid = std::max(grid, direct_form(h, x));
                      }
                  const double value = maximize(h).value;
                  c.require(std::fabs(value - 7.0 / 6.0) <= 1e-8, "maximize gives " + num(value));
                  c.require(std::fabs(grid - 7.0 / 6.0) <= 1e-8, "grid oracle gives " + num(grid));
                  c.require(value >= grid - 1e-12, "grid found a larger value");
              });

    criterion(6, "classify12: weak jump exactly on the listed values (k <= 100), strong jump on 10001 interior "
                 "rationals, under 1 s",
              [&](Check& c) {
                  const auto start = Clock::now();
                  std::set<Rational> listed{0, 1, Rational(5, 4), 2};
                  for (int k = 0; k <= 100; ++k) {
                      listed.insert(Rational(k, k + 1));
                      if (k >= 1) {
                          listed.insert(1 + Rational(k, 4 * (k + 1)));
                          listed.insert(Rational(2 * k + 1, k + 1));
                      }
                  }
                  int wrong = 0;
                  for (const auto& a : listed)
                      wrong += classify12(a).verdict != JumpVerdict::weak_jump;
                  c.require(wrong == 0, std::to_string(wrong) + " listed values not weak");

                  // (4i+2)/p with p = 20029 prime: p = 1 mod 4 rules out k/(k+1) and (2k+1)/(k+1),
                  // p != 5 mod 16 rules out 1 + k/(4(k+1)).
                  int interior = 0, not_strong = 0;
                  for (int i = 0; i <= 10000; ++i) {
                      const Rational a(4 * i + 2, 20029);
                      if (listed_weak(a))
                          continue;
                      ++interior;
                      not_strong += classify12(a).verdict != JumpVerdict::strong_jump;
                  }
                  c.require(interior == 10001, "only " + std::to_string(interior) + " interior points");
                  c.require(not_strong == 0, std::to_string(not_strong) + " interior values not strong");

                  // Exactness: on the grid i/5000 the verdict is weak iff the value is listed.
                  int mismatches = 0;
                  for (int i = 0; i <= 10000; ++i) {
                      const Rational a(i, 5000);
                      mismatches += (classify12(a).verdict == JumpVerdict::weak_jump) != listed_weak(a);
                  }
                  c.require(mismatches == 0, std::to_string(mismatches) + " mismatches on the i/5000 grid");
                  const double elapsed = seconds_since(start);
                  c.require(elapsed < 1.0, "took " + num(elapsed) + " s");
                  if (c.ok)
                      c.detail << num(elapsed) << " s";
              });

    criterion(7, "pi_4(K_3) = 2/3 with extremal K_{2,2}; pi_n(K_2^{1,2}) non-increasing and >= 5/4 for n = 2..5, "
                 "under 5 min",
              [&](Check& c) {
                  const auto k3 = named::complete(3, k2);
                  const ForbiddenFamily triangle(ContainmentMode::subgraph, {k3}, k2);
                  const auto r4 = pi_n(triangle, 4);
                  c.require(r4.pi_n == Rational(2, 3), "pi_4 = " + to_string(r4.pi_n));
                  const Hypergraph c4(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
                  c.require(r4.extremal.size() == 1 && are_isomorphic(r4.extremal[0], c4),
                            "extremal graphs are not exactly {K_{2,2}}");
                  c.require(oracle::pi_n({k3}, 4, {2}, false) == Rational(2, 3), "oracle disagrees at n = 4");

                  const auto start = Clock::now();
                  const auto k = named::complete(2, k12);
                  const ForbiddenFamily fam(ContainmentMode::subgraph, {k}, k12);
                  const auto seq = density_sequence(fam, 5);
                  const double elapsed = seconds_since(start);
                  c.require(seq.records.size() == 4 && seq.records.front().n == 2, "unexpected range of n");
                  c.require(seq.is_non_increasing(), "sequence increases");
                  std::string values;
                  for (const auto& r : seq.records) {
                      c.require(r.pi_n >= Rational(5, 4), "pi_" + std::to_string(r.n) + " below 5/4");
                      c.require(r.pi_n == oracle::pi_n({k}, r.n, {1, 2}, false),
                                "oracle disagrees at n = " + std::to_string(r.n));
                      values += (values.empty() ? "" : ", ") + to_string(r.pi_n);
                  }
                  c.require(elapsed < 300, "took " + num(elapsed) + " s");
                  if (c.ok)
                      c.detail << "pi_2..5 = " << values << ", " << num(elapsed) << " s";
              });

    criterion(8, "Lagrangian of the blow-up H(2) equals that of H within 1e-7 for 25 random {1,2}-graphs on <= 4 "
                 "vertices",
              [&](Check& c) {
                  std::mt19937_64 rng(8);
                  double worst = 0;
                  for (int trial = 0; trial < 25; ++trial) {
                      const int n = 1 + static_cast<int>(rng() % 4);
                      const auto h = oracle::random_graph(rng, n, {1, 2}, 0.5);
                      const auto twice = blow_up(h, std::vector<int>(static_cast<std::size_t>(n), 2));
                      const auto base = maximize(h);
                      const auto big = maximize(twice);
                      worst = std::max(worst, std::fabs(big.value - base.value));
                      // Splitting each weight in half over the two clones keeps the value.
                      std::vector<double> split;
                      for (double w : base.maximizer.weights())
                          split.insert(split.end(), {w / 2, w / 2});
                      c.require(std::fabs(direct_form(twice, split) - base.value) <= 1e-12,
                                "split point disagrees in trial " + std::to_string(trial));
                      // No sampled point of H(2) beats the reported maximum.
                      for (int s = 0; s < 2000; ++s)
                          if (direct_form(twice, random_simplex(rng, twice.n())) > big.value + 1e-12) {
                              c.require(false, "random point beats maximize in trial " + std::to_string(trial));
                              break;
                          }
                  }
                  c.require(worst <= 1e-7, "max difference " + num(worst));
                  if (c.ok)
                      c.detail << "max difference " << num(worst);
              });

    criterion(9, "analytic gradient matches central differences (h = 1e-6) within 1e-6 on 50 random patterns",
              [&](Check& c) {
                  std::mt19937_64 rng(9);
                  double worst = 0;
                  for (int trial = 0; trial < 50; ++trial) {
                      const int n = 1 + static_cast<int>(rng() % 5);
                      std::set<Pattern::Multiplicities> edges;
                      const int m = 1 + static_cast<int>(rng() % 6);
                      while (static_cast<int>(edges.size()) < m) {
                          Pattern::Multiplicities e(static_cast<std::size_t>(n), 0);
                          const int size = 1 + static_cast<int>(rng() % 3);
                          for (int k = 0; k < size; ++k)
                              ++e[rng() % static_cast<std::size_t>(n)];
                          edges.insert(e);
                          if (n == 1 && edges.size() == 3)
                              break;
                      }
                      const Pattern p(n, {edges.begin(), edges.end()});
                      const auto x = random_simplex(rng, n);
                      const auto g = gradient(p, SimplexPoint(x));
                      const double h = 1e-6;
                      // Differences of the form extended off the simplex as the same polynomial.
                      const PolynomialForm f(p);
                      for (int i = 0; i < n; ++i) {
                          auto up = x, down = x;
                          up[static_cast<std::size_t>(i)] += h;
                          down[static_cast<std::size_t>(i)] -= h;
                          const double fd = (f.evaluate(up) - f.evaluate(down)) / (2 * h);
                          worst = std::max(worst, std::fabs(fd - g[static_cast<std::size_t>(i)]));
                      }
                  }
                  c.require(worst < 1e-6, "max error " + num(worst));
                  if (c.ok)
                      c.detail << "max error " << num(worst);
              });

    criterion(10, "strong-jump certificate at 11/10 for {chain} succeeds strict with gap exactly 1/40", [&](Check& c) {
        const ForbiddenFamily fam(ContainmentMode::subgraph, {named::chain()}, k12);
        const auto cert = build_certificate(Rational(11, 10), fam, true);
        c.require(cert.kind == CertificateKind::strong_jump, "not a strong-jump certificate");
        c.require(cert.gap == Rational(1, 40), "gap " + to_string(cert.gap));
        c.require(cert.gap == Rational(9, 8) - Rational(11, 10), "gap is not 9/8 - 11/10");
        c.require(cert.pi_evidence.value < Rational(11, 10), "pi bound not below alpha");
    });

    criterion(11, "sigma_t of Turan graphs T(n,2), n <= 30: non-increasing in t = 2..6, >= member Lubell values, "
                  "sigma_4 = 2/3",
              [&](Check& c) {
                  const auto gen = SequenceGenerator::turan(2, 4, 1);
                  const int last = 26; // n = 30
                  Rational prev = 100;
                  for (int t = 2; t <= 6; ++t) {
                      const auto rep = sigma_t(gen, t, 0, last);
                      c.require(rep.exhaustive, "t = " + std::to_string(t) + " was sampled");
                      c.require(rep.sigma <= prev, "sigma increases at t = " + std::to_string(t));
                      prev = rep.sigma;
                      for (const auto& [i, h] : rep.h_values)
                          if (gen.vertices(i) >= t && rep.sigma < h)
                              c.require(false, "sigma_" + std::to_string(t) + " below member " + std::to_string(i));
                      if (t == 4)
                          c.require(rep.sigma == Rational(2, 3), "sigma_4 = " + to_string(rep.sigma));
                  }
                  // Subset oracle: every 4-subset of T(n,2), n <= 20.
                  Rational best = 0;
                  for (int n = 4; n <= 20; ++n) {
                      const auto g = named::turan_graph(n, 2);
                      std::vector<int> s(4);
                      for (s[0] = 0; s[0] < n; ++s[0])
                          for (s[1] = s[0] + 1; s[1] < n; ++s[1])
                              for (s[2] = s[1] + 1; s[2] < n; ++s[2])
                                  for (s[3] = s[2] + 1; s[3] < n; ++s[3]) {
                                      int edges = 0;
                                      for (int a = 0; a < 4; ++a)
                                          for (int b = a + 1; b < 4; ++b)
                                              edges += g.has_edge({s[a], s[b]});
                                      best = std::max(best, Rational(edges, 6));
                                  }
                  }
                  c.require(best == Rational(2, 3), "subset oracle gives " + to_string(best));
              });

    criterion(12, "disjoint-type union: Lubell additivity exact on 100 random pairs; sigma_t(union) <= sigma_t(G1) + "
                  "sigma_t(G2) on every tested member",
              [&](Check& c) {
                  std::mt19937_64 rng(12);
                  const std::vector<std::pair<std::vector<int>, std::vector<int>>> splits{
                      {{1}, {2}}, {{2}, {1, 3}}, {{1, 2}, {3}}, {{3}, {1}}};
                  int sigma_checks = 0;
                  for (int trial = 0; trial < 100; ++trial) {
                      const auto& [r1, r2] = splits[static_cast<std::size_t>(trial) % splits.size()];
                      const int n = 1 + static_cast<int>(rng() % 7);
                      const auto g1 = oracle::random_graph(rng, n, r1, 0.5);
                      const auto g2 = oracle::random_graph(rng, n, r2, 0.5);
                      const auto u = disjoint_type_union(g1, g2);
                      c.require(lubell(u) == lubell(g1) + lubell(g2),
                                "additivity fails in trial " + std::to_string(trial));
                      c.require(oracle::lubell(n, u.edges()) == oracle::lubell(n, g1.edges()) +
                                                                     oracle::lubell(n, g2.edges()),
                                "oracle additivity fails in trial " + std::to_string(trial));
                      for (int t = 1; t <= n; ++t) {
                          ++sigma_checks;
                          if (sigma_t(u, t).sigma > sigma_t(g1, t).sigma + sigma_t(g2, t).sigma)
                              c.require(false, "subadditivity fails in trial " + std::to_string(trial));
                      }
                  }
                  // Union sequence: loops on half the vertices plus the balanced complete bipartite graph.
                  const auto loops =
                      SequenceGenerator::blowup(Hypergraph(2, {{0}}), {Rational(1, 2), Rational(1, 2)}, 4, 2);
                  const auto bip = SequenceGenerator::turan(2, 4, 2);
                  const auto both = SequenceGenerator::union_of(loops, bip);
                  for (int i = 0; i <= 8; ++i)
                      for (int t = 2; t <= 6; ++t) {
                          if (both.vertices(i) < t)
                              continue;
                          ++sigma_checks;
                          const auto m = both.member(i);
                          c.require(lubell(m) == lubell(loops.member(i)) + lubell(bip.member(i)),
                                    "member additivity fails at i = " + std::to_string(i));
                          if (sigma_t(m, t).sigma > sigma_t(loops.member(i), t).sigma + sigma_t(bip.member(i), t).sigma)
                              c.require(false, "subadditivity fails at i = " + std::to_string(i));
                      }
                  if (c.ok)
                      c.detail << sigma_checks << " subadditivity checks";
              });

    return failures == 0 ? 0 : 1;
}
