// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "commands.hpp"

#include "morsecup/cup.hpp"
#include "morsecup/cuplength.hpp"
#include "morsecup/errors.hpp"
#include "morsecup/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace morsecup;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool condition, const std::string& why) {
    if (!condition) fail(why);
  }
};

std::vector<std::size_t> ranks(const GradedComplex& c) {
  std::vector<std::size_t> out;
  for (const auto& h : cohomology(c)) out.push_back(h.rank);
  return out;
}

std::string show(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str() + ")";
}

struct Family {
  MorseDatum alpha, beta, gamma;
};

// alpha repels from y = 0, beta attracts to y = 1/2, gamma repels from 1/2 with beta's spectrum.
Family product_family(int n, std::uint64_t seed) {
  auto [a, b] = random_generic_pair(n, seed);
  return {make_datum(SpaceKind::Projective, a, VerticalFactor{-1, 0.0}, "alpha"),
          make_datum(SpaceKind::Projective, b, VerticalFactor{1, 0.5}, "beta"),
          make_datum(SpaceKind::Projective, b, VerticalFactor{-1, 0.5}, "gamma")};
}

std::string tag(int n, std::uint64_t seed) { return "n=" + std::to_string(n) + " seed=" + std::to_string(seed); }

Outcome rp_cohomology() {
  Outcome out;
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto t0 = Clock::now();
      const auto d = make_datum(SpaceKind::Projective, random_generic_pair(n, 1000 + seed).first, std::nullopt, "a");
      const auto r = ranks(build_complex(d, RingTag::Z2));
      out.require(r == std::vector<std::size_t>(n + 1, 1), tag(n, seed) + " ranks " + show(r));
      out.require(seconds_since(t0) < 1.0, tag(n, seed) + " took over 1 s");
    }
  return out;
}

Outcome sphere_cohomology() {
  Outcome out;
  for (int n = 1; n <= 5; ++n) {
    const auto t0 = Clock::now();
    const auto d = make_datum(SpaceKind::Sphere, random_spectrum(n, 2000 + n), std::nullopt, "a");
    std::vector<std::size_t> expected(n + 1, 0);
    expected.front() = expected.back() = 1;
    const auto r = ranks(build_complex(d, RingTag::Z2));
    out.require(r == expected, "n=" + std::to_string(n) + " ranks " + show(r));
    out.require(seconds_since(t0) < 1.0, "n=" + std::to_string(n) + " took over 1 s");
  }
  return out;
}

Outcome rp_cup_table() {
  Outcome out;
  for (int n = 2; n <= 4; ++n) {
    const auto t0 = Clock::now();
    auto [a, b] = random_generic_pair(n, 3000 + n);
    const auto alpha = make_datum(SpaceKind::Projective, a, std::nullopt, "alpha");
    const auto beta = make_datum(SpaceKind::Projective, b, std::nullopt, "beta");
    const auto w = chain_cup(alpha, alpha, beta, RingTag::Z2);
    for (const auto& z : critical_points(alpha))
      for (const auto& x : critical_points(alpha))
        for (const auto& y : critical_points(beta)) {
          const bool expected = z.eigen_index == x.eigen_index + y.eigen_index;
          out.require(w.get(z.name, x.name, y.name) == (expected ? 1 : 0),
                      "n=" + std::to_string(n) + " w(" + z.name + "," + x.name + "," + y.name + ")");
        }
    const auto absolute = absolute_cup_length(alpha, beta);
    out.require(absolute.value == n + 1, "n=" + std::to_string(n) + " absolute " + std::to_string(absolute.value));
    out.require(seconds_since(t0) < 5.0, "n=" + std::to_string(n) + " took over 5 s");
  }
  return out;
}

Outcome headline_example() {
  Outcome out;
  for (int n = 2; n <= 4; ++n) {
    const auto t0 = Clock::now();
    const auto f = product_family(n, 4000 + n);
    const auto relative = relative_cup_length(f.alpha, f.beta);
    out.require(relative.value == n + 1, "n=" + std::to_string(n) + " Y=" + std::to_string(relative.value));
    const auto w_gamma = chain_cup(f.alpha, f.alpha, f.gamma, RingTag::Z2);
    out.require(w_gamma.entries().empty(), "n=" + std::to_string(n) + " gamma table has entries");
    const auto absolute = absolute_cup_length(f.alpha, f.gamma);
    out.require(absolute.all_products_vanish, "n=" + std::to_string(n) + " vanishing flag not set");
    out.require(seconds_since(t0) < 5.0, "n=" + std::to_string(n) + " took over 5 s");
  }
  return out;
}

Outcome critical_point_bound_check() {
  Outcome out;
  for (int n = 2; n <= 4; ++n) {
    const auto f = product_family(n, 4000 + n);
    const auto b = critical_point_bound(f.alpha, f.beta);
    out.require(b.critical_points == n + 1 && b.cup_length == n + 1 && b.satisfied,
                "n=" + std::to_string(n) + " critical points " + std::to_string(b.critical_points) + ", Y " +
                    std::to_string(b.cup_length));
  }
  return out;
}

void identities_on(Outcome& out, const std::string& what, RingTag ring, const MorseDatum& alpha,
                   const MorseDatum& beta) {
  const auto ca = build_complex(alpha, ring);
  const auto cb = build_complex(beta, ring);
  out.require(validate_differential(ca).ok && validate_differential(cb).ok, what + " d^2 != 0");
  const auto w_ab = chain_cup(alpha, alpha, beta, ring);
  const auto w_ba = chain_cup(alpha, beta, alpha, ring);
  out.require(leibniz_check(w_ab, ca, ca, cb).ok, what + " Leibniz (a,b)");
  out.require(leibniz_check(w_ba, ca, cb, ca).ok, what + " Leibniz (b,a)");
  out.require(commutativity_check(w_ab, w_ba).ok, what + " commutativity");
}

Outcome algebraic_identities() {
  Outcome out;
  const auto t0 = Clock::now();
  int mutations = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    for (int n = 1; n <= 4; ++n) {
      auto [a, b] = random_generic_pair(n, 5000 + 10 * seed + n);
      const auto sa = make_datum(SpaceKind::Sphere, a, std::nullopt, "alpha");
      const auto sb = make_datum(SpaceKind::Sphere, b, std::nullopt, "beta");
      for (auto ring : {RingTag::Z2, RingTag::Z}) identities_on(out, "sphere " + tag(n, seed), ring, sa, sb);
      identities_on(out, "projective " + tag(n, seed), RingTag::Z2,
                    make_datum(SpaceKind::Projective, a, std::nullopt, "alpha"),
                    make_datum(SpaceKind::Projective, b, std::nullopt, "beta"));
      const auto f = product_family(n, 5000 + 10 * seed + n);
      identities_on(out, "product beta " + tag(n, seed), RingTag::Z2, f.alpha, f.beta);
      identities_on(out, "product gamma " + tag(n, seed), RingTag::Z2, f.alpha, f.gamma);

      // mutation soundness: one flipped entry must break Leibniz
      for (auto ring : {RingTag::Z2, RingTag::Z}) {
        const auto ca = build_complex(sa, ring);
        const auto cb = build_complex(sb, ring);
        const auto [mutated, key] = mutate_first_entry(chain_cup(sa, sa, sb, ring));
        out.require(!leibniz_check(mutated, ca, ca, cb).ok, "mutation survived Leibniz at " + tag(n, seed));
        ++mutations;
      }
    }
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
  if (out.ok) out.detail = std::to_string(mutations) + " mutations caught";
  return out;
}

void record(Outcome& out, const OracleCounts& counts, const std::string& what, std::size_t& compared) {
  compared += counts.connections.size() + counts.triples.size();
  if (!counts.discrepancies.empty()) {
    const auto& d = counts.discrepancies.front();
    std::string gens;
    for (const auto& g : d.generators) gens += g + " ";
    out.fail(what + " " + d.what + " " + gens + "oracle " + std::to_string(d.oracle) + " engine " +
             std::to_string(d.engine));
  }
}

Outcome oracle_equivalence() {
  Outcome out;
  const auto t0 = Clock::now();
  std::size_t compared = 0;
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto [a, b] = random_generic_pair(n, 6000 + 10 * seed + n);
      const auto f = product_family(n, 6000 + 10 * seed + n);
      for (auto space : {SpaceKind::Sphere, SpaceKind::Projective}) {
        const auto alpha = make_datum(space, a, std::nullopt, "alpha");
        const auto beta = make_datum(space, b, std::nullopt, "beta");
        record(out, compare_connections(alpha, build_complex(alpha, RingTag::Z2)), tag(n, seed), compared);
        const auto w = chain_cup(alpha, alpha, beta, RingTag::Z2);
        record(out, compare_triples(alpha, alpha, beta, [&](auto& z, auto& x, auto& y) { return w.get(z, x, y); }),
               tag(n, seed), compared);
      }
      for (const auto* d : {&f.alpha, &f.beta, &f.gamma})
        record(out, compare_connections(*d, build_complex(*d, RingTag::Z2)), "product " + tag(n, seed), compared);
      for (const auto* partner : {&f.beta, &f.gamma}) {
        const auto w = chain_cup(f.alpha, f.alpha, *partner, RingTag::Z2);
        record(out,
               compare_triples(f.alpha, f.alpha, *partner, [&](auto& z, auto& x, auto& y) { return w.get(z, x, y); }),
               "product " + tag(n, seed), compared);
      }
    }
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 300.0, "took " + std::to_string(elapsed) + " s");
  if (out.ok) out.detail = std::to_string(compared) + " counts compared";
  return out;
}

Outcome orientation_signs() {
  Outcome out;
  const auto t0 = Clock::now();
  const auto swap = cli::swap_rule_check(100, 7000, 6);
  out.require(swap.trials == 100 && swap.failures == 0, std::to_string(swap.failures) + " swap-rule failures");
  for (int n = 1; n <= 3; ++n) {
    const auto d = make_datum(SpaceKind::Sphere, random_spectrum(n, 7100 + n), std::nullopt, "a");
    const auto groups = cohomology(build_complex(d, RingTag::Z));
    std::vector<std::size_t> expected(n + 1, 0), got;
    expected.front() = expected.back() = 1;
    for (const auto& h : groups) {
      got.push_back(h.rank);
      out.require(h.torsion.empty(), "n=" + std::to_string(n) + " unexpected torsion");
    }
    out.require(got == expected, "n=" + std::to_string(n) + " integer ranks " + show(got));
  }
  out.require(seconds_since(t0) < 10.0, "took over 10 s");
  return out;
}

Outcome remark_inequality() {
  Outcome out;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const auto f = product_family(n, 8000 + seed);
    const auto r = remark_inequality_check(f.alpha, f.beta, f.gamma);
    out.require(r.holds, tag(n, seed) + " Y'=" + std::to_string(r.absolute) + " Y=" + std::to_string(r.relative));
  }
  out.require(seconds_since(t0) < 60.0, "took over 60 s");
  return out;
}

Outcome attracting_independence() {
  Outcome out;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    auto [a, b] = random_generic_pair(n, 9000 + seed);
    const auto c = random_generic_partner({a, b}, 9100 + seed);
    const auto alpha = make_datum(SpaceKind::Projective, a, VerticalFactor{-1, 0.0}, "alpha");
    const auto first = make_datum(SpaceKind::Projective, b, VerticalFactor{1, 0.5}, "beta1");
    const auto second = make_datum(SpaceKind::Projective, c, VerticalFactor{1, 0.5}, "beta2");
    const int y1 = relative_cup_length(alpha, first).value;
    const int y2 = relative_cup_length(alpha, second).value;
    out.require(y1 == y2, tag(n, seed) + " Y " + std::to_string(y1) + " vs " + std::to_string(y2));
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 RP^n cohomology is Z2 in every degree", rp_cohomology},
      {"AC2 sphere cohomology sits in degrees 0 and n", sphere_cohomology},
      {"AC3 RP^n cup table and absolute cup-length n+1", rp_cup_table},
      {"AC4 product example: Y = n+1, gamma products vanish", headline_example},
      {"AC5 critical points = n+1 = Y", critical_point_bound_check},
      {"AC6 d^2 = 0, Leibniz, commutativity, mutation caught", algebraic_identities},
      {"AC7 brute-force oracle agrees", oracle_equivalence},
      {"AC8 swap rule and integer sphere cohomology", orientation_signs},
      {"AC9 Y' <= Y", remark_inequality},
      {"AC10 Y independent of the attracting spectrum", attracting_independence},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    std::printf("[%s] %s (%.2f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", name.c_str(), elapsed,
                outcome.detail.empty() ? "" : " - ", outcome.detail.c_str());
    failures += outcome.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
