// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "normtrace/cli.hpp"
#include "normtrace/code.hpp"
#include "normtrace/conics.hpp"
#include "normtrace/minimal.hpp"
#include "normtrace/variety.hpp"

using namespace normtrace;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

struct QR {
  std::uint64_t q;
  std::uint32_t r;
};

const std::vector<QR> kVarietySets = {{2, 2}, {3, 2}, {2, 3}, {3, 3}};

unsigned variety_k(const QR& s) { return static_cast<unsigned>(std::min<std::uint64_t>(ipow(s.q, s.r - 1) - 1, 4)); }

Message graph_message(const UniPoly& f) {
  return Message{Field::one(), std::vector<Elem>(f.coeffs().begin(), f.coeffs().end())};
}

Outcome c1() {
  const std::vector<std::pair<QR, std::size_t>> cases = {{{2, 2}, 8},  {{3, 2}, 27}, {{4, 2}, 64},
                                                         {{5, 2}, 125}, {{2, 3}, 32}, {{3, 3}, 243}};
  Outcome o{true, ""};
  double worst = 0;
  for (const auto& [s, expected] : cases) {
    const auto t0 = Clock::now();
    const auto curve = enumerate_affine(build_tower_for_q(s.q, s.r));
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    o.detail += "(" + std::to_string(s.q) + "," + std::to_string(s.r) + ")=" + std::to_string(curve->size()) + " ";
    if (curve->size() != expected || curve->size() != ipow(s.q, 2 * s.r - 1) || dt >= 1.0) o.pass = false;
  }
  o.detail += "max " + fmt(worst, 3) + "s";
  return o;
}

Outcome c2() {
  std::uint64_t mismatches = 0, checked = 0;
  for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
    const auto t = build_tower_for_q(q, 2);
    const auto curve = enumerate_affine(t);
    const auto& F = t->ext();
    for (std::uint32_t x = 0; x < F.order(); ++x)
      for (std::uint32_t y = 0; y < F.order(); ++y) {
        const bool hermitian = F.pow(Elem{x}, q + 1) == F.add(F.pow(Elem{y}, q), Elem{y});
        mismatches += curve->contains(Elem{x}, Elem{y}) != hermitian;
        ++checked;
      }
  }
  return {mismatches == 0, std::to_string(checked) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome c3() {
  const EvalCode code(enumerate_affine(build_tower_for_q(3, 2)), 2);
  const auto& F = code.field();
  SpectrumOptions so;
  std::uint64_t total = 0;
  for (const auto& [w, n] : weight_spectrum(code, so)) total += n;
  std::uint64_t checked = 0, exceptions = 0;
  std::vector<Elem> coords(4);
  for (std::uint32_t idx = 1; idx < F.order() * F.order() * F.order(); ++idx) {
    coords = {Elem{0}, Elem{idx % 9}, Elem{(idx / 9) % 9}, Elem{idx / 81}};
    const auto m = code.message_from_coordinates(coords);
    const auto s = distinct_roots_in_field(F, m.f()).roots.size();
    exceptions += code.encode(m).weight() != 27 - 3 * s;
    ++checked;
  }
  return {exceptions == 0 && total == ipow(9, 4),
          std::to_string(checked) + " codewords with b=0, " + std::to_string(exceptions) + " exceptions"};
}

std::size_t distinct_codeword_rank(const EvalCode& code) {
  const std::uint64_t Q = code.field().order();
  const std::uint64_t total = ipow(Q, code.message_length());
  std::set<std::vector<std::uint32_t>> words;
  std::vector<Elem> coords(code.message_length());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (auto& c : coords) {
      c = Elem{static_cast<std::uint32_t>(t % Q)};
      t /= Q;
    }
    std::vector<std::uint32_t> w;
    for (const Elem e : code.encode(code.message_from_coordinates(coords)).values) w.push_back(e.v);
    words.insert(std::move(w));
  }
  std::size_t r = 0;
  for (std::uint64_t n = words.size(); n > 1; n /= Q) ++r;
  return r;
}

Outcome c4() {
  Outcome o{true, ""};
  for (auto [q, r, k] : std::vector<std::tuple<std::uint64_t, std::uint32_t, unsigned>>{{2, 2, 1}, {3, 2, 2}, {2, 3, 3}}) {
    const EvalCode code(enumerate_affine(build_tower_for_q(q, r)), k);
    const auto measured = code.measured_dimension();
    const auto oracle = distinct_codeword_rank(code);
    o.pass = o.pass && measured == oracle;
    o.detail += "(" + std::to_string(q) + "," + std::to_string(r) + "," + std::to_string(k) + ") measured " +
                std::to_string(measured) + " oracle " + std::to_string(oracle) + " claimed " +
                std::to_string(code.claimed_dimension()) + " delta +" +
                std::to_string(measured - code.claimed_dimension()) + "; ";
  }
  return o;
}

Outcome c5() {
  const auto t0 = Clock::now();
  std::uint64_t failures = 0, trials = 0;
  for (const auto& s : kVarietySets) {
    const unsigned k = variety_k(s);
    const EvalCode code(enumerate_affine(build_tower_for_q(s.q, s.r)), k);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
      const UniPoly f = random_poly(code.field(), k, rng);
      const auto spec = make_variety_spec(code.curve().tower_ptr(), f);
      const auto s_points = count_S_points(spec);
      const auto m = graph_message(f);
      const auto inter = count_intersections(code.curve(), m);
      const auto complement = code.length() - code.weight(m);
      failures += !(s_points == inter && inter == complement);
      ++trials;
    }
  }
  const double dt = seconds_since(t0);
  return {failures == 0 && dt < 30,
          std::to_string(trials) + " polynomials, " + std::to_string(failures) + " failures, " + fmt(dt) + "s"};
}

Outcome c6() {
  std::uint64_t failures = 0, points = 0;
  bool rows = true;
  for (const auto& s : kVarietySets) {
    const unsigned k = variety_k(s);
    const auto t = build_tower_for_q(s.q, s.r);
    rows = rows && check_conjugate_matrix_rows(*t).passed;
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
      const auto rep = equivalence_check(make_variety_spec(t, random_poly(t->ext(), k, rng)));
      failures += rep.orbit_identity_failures + (rep.passed ? 0 : 1);
      points += t->ext().order();
    }
  }
  return {failures == 0 && rows, std::to_string(points) + " orbit evaluations, " + std::to_string(failures) +
                                     " failures, row identity " + (rows ? "passed" : "failed")};
}

Outcome c7() {
  const auto t0 = Clock::now();
  Outcome o{true, ""};
  for (auto [q, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{17, 1}, {37, 3}}) {
    const auto t = build_tower_for_q(q, 2);
    const auto curve = enumerate_affine(t);
    auto window = bound_window(q, 2, k, BoundTheorem::cafure_matera);
    std::mt19937_64 rng(1);
    std::uint64_t lo = UINT64_MAX, hi = 0, outside = 0;
    for (int i = 0; i < 50; ++i) {
      const auto f = random_poly(t->ext(), k, rng);
      const auto n = count_S_points(make_variety_spec(t, f));
      attach_count(window, n);
      outside += !*window.holds;
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    o.pass = o.pass && window.hypothesis_met && outside == 0;
    o.detail += "(" + std::to_string(q) + ",2," + std::to_string(k) + ") counts [" + std::to_string(lo) + "," +
                std::to_string(hi) + "] window [" + std::to_string(window.lower) + "," +
                std::to_string(*window.upper) + "] delta " + fmt(static_cast<double>(window.delta)) + "; ";
  }
  const double dt = seconds_since(t0);
  o.pass = o.pass && dt < 5;
  o.detail += fmt(dt) + "s";
  return o;
}

Outcome c8() {
  const auto t0 = Clock::now();
  Outcome o{true, ""};
  for (auto [q, k, expected] : std::vector<std::tuple<std::uint64_t, unsigned, std::size_t>>{{2, 1, 21}, {3, 2, 820}}) {
    const EvalCode code(enumerate_affine(build_tower_for_q(q, 2)), k);
    const auto entries = enumerate_minimal(code);
    std::size_t disagreements = 0, minimal = 0;
    for (const auto& e : entries) {
      const auto c = code.encode(code.message_from_coordinates(e.message));
      const auto sv = scan_minimality(code.field(), code.basis(), c.values);
      disagreements += sv.is_minimal != e.minimal;
      minimal += e.minimal;
    }
    o.pass = o.pass && entries.size() == expected && disagreements == 0;
    o.detail += "(" + std::to_string(q) + ",2," + std::to_string(k) + ") " + std::to_string(entries.size()) +
                " classes, " + std::to_string(minimal) + " minimal, " + std::to_string(disagreements) + " disagreements; ";
  }
  const double dt = seconds_since(t0);
  o.pass = o.pass && dt < 10;
  o.detail += fmt(dt) + "s";
  return o;
}

Outcome c9() {
  const auto t0 = Clock::now();
  const EvalCode code(enumerate_affine(build_tower_for_q(5, 2)), 4);
  auto tally = [&](MinimalClass c) {
    const auto msgs = sample_class_messages(code, c, 1000, 1);
    const auto rep = classify_messages(code, msgs, 4);
    std::uint64_t minimal = 0;
    for (const auto& row : rep.rows) minimal += row.oracle_minimal;
    return minimal;
  };
  const auto iii = tally(MinimalClass::class_iii);
  const auto ii = tally(MinimalClass::class_ii);
  const auto i = tally(MinimalClass::class_i);
  const double dt = seconds_since(t0);
  return {iii == 1000 && ii == 1000 && dt < 300,
          "class iii " + std::to_string(iii) + "/1000 minimal, class ii " + std::to_string(ii) +
              "/1000 minimal, class i " + std::to_string(i) + "/1000 minimal (reported only), " + fmt(dt) + "s"};
}

Outcome c10() {
  Outcome o{true, ""};
  for (std::uint64_t q : {3u, 5u}) {
    const auto t0 = Clock::now();
    const HermitianPlane plane(build_tower_for_q(q, 2));
    SurveyOptions so;
    so.workers = 4;
    const auto rep = survey(plane, so);
    std::size_t largest_irreducible = 0;
    for (const auto& [key, n] : rep.histogram)
      if (key.first == "irreducible") largest_irreducible = std::max(largest_irreducible, key.second);
    const double dt = seconds_since(t0);
    o.pass = o.pass && rep.violation_count == 0 && largest_irreducible <= 2 * q + 2 && dt < 120;
    o.detail += "q=" + std::to_string(q) + " " + std::to_string(rep.conics) + " conics, " +
                std::to_string(rep.violation_count) + " violations, " + fmt(dt) + "s; ";
  }
  return o;
}

Outcome c11() {
  const auto t0 = Clock::now();
  const auto res = cli::run_args({"conics", "survey", "--q", "9", "--mode", "sampled", "--samples", "100000", "--seed",
                                  "1", "--validate-prop53", "--workers", "4"});
  const double dt = seconds_since(t0);
  if (res.exit_code != cli::kExitOk && res.exit_code != cli::kExitViolation) return {false, "run failed: " + res.err};
  const auto j = nlohmann::json::parse(res.out);
  const auto& results = j["results"];
  auto count = [](const nlohmann::json& m, const char* key) { return m[key]["value"].get<std::uint64_t>(); };
  auto tally = [&](const nlohmann::json& m, std::uint64_t& agree, std::uint64_t& total) {
    agree = count(m, "predicate_true_oracle_minimal") + count(m, "predicate_false_oracle_not_minimal");
    total = agree + count(m, "predicate_true_oracle_not_minimal") + count(m, "predicate_false_oracle_minimal");
  };
  std::uint64_t agree = 0, total = 0, affine_agree = 0, affine_total = 0;
  tally(results["agreement_projective"], agree, total);
  tally(results["agreement_affine"], affine_agree, affine_total);
  const auto& dumped = results["disagreements"];
  bool full_data = true;
  for (const auto& d : dumped)
    full_data = full_data && d.contains("coeffs") && d.contains("shape") && d.contains("projective_size") &&
                d.contains("oracle_minimal") && d.contains("kernel_dimension");
  const double rate = total ? static_cast<double>(agree) / static_cast<double>(total) : 0;
  return {total == 100000 && rate >= 0.999 && dumped.size() == total - agree && full_data && dt < 600,
          "agreement " + std::to_string(agree) + "/" + std::to_string(total) + " = " + fmt(100 * rate, 3) + "%, " +
              std::to_string(dumped.size()) + " disagreements dumped, affine-count variant " +
              std::to_string(affine_agree) + "/" + std::to_string(affine_total) + ", " + fmt(dt) + "s"};
}

Outcome c12() {
  std::vector<std::vector<std::string>> runs;
  for (const auto& s : kVarietySets)
    runs.push_back({"variety", "verify", "--q", std::to_string(s.q), "--r", std::to_string(s.r), "--k",
                    std::to_string(variety_k(s)), "--trials", "100", "--seed", "1"});
  for (const char* cls : {"iii", "ii", "i"})
    runs.push_back({"minimal", "compare", "--q", "5", "--r", "2", "--k", "4", "--class", cls, "--samples", "1000",
                    "--seed", "1"});
  runs.push_back({"conics", "survey", "--q", "9", "--mode", "sampled", "--samples", "100000", "--seed", "1",
                  "--validate-prop53"});
  std::size_t identical = 0;
  for (auto args : runs) {
    auto a1 = args;
    a1.insert(a1.end(), {"--workers", "1"});
    auto a4 = args;
    a4.insert(a4.end(), {"--workers", "4"});
    const auto r1 = cli::run_args(a1);
    const auto r4 = cli::run_args(a4);
    identical += r1.exit_code == r4.exit_code && r1.out == r4.out && !r1.out.empty();
  }
  return {identical == runs.size(),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " reports byte-identical for workers 1 vs 4"};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
