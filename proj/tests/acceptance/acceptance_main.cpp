// Runs every acceptance criterion at its pinned sizes and prints one line per
// criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "plueckerlab/suites.hpp"

using namespace plueckerlab;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes.push_back(what);
    }
  }
};

json run_suite(const std::string& command, int r, int m, int trials, std::vector<int> splitting = {}) {
  ExperimentConfig c;
  c.command = command;
  c.r = r;
  c.m = m;
  c.trials = trials;
  c.seed = kSeed;
  c.splitting = std::move(splitting);
  return run(c).to_json(false);
}

std::string label(const json& report) {
  const auto& c = report["config"];
  std::string out = report["command"].get<std::string>() + " (" + std::to_string(c["r"].get<int>()) + "," +
                    std::to_string(c["m"].get<int>()) + ")";
  if (c.contains("splitting")) out += " splitting " + c["splitting"].dump();
  return out;
}

// Number of passing cases of the given kind that also satisfy `extra`.
std::size_t count(const json& report, const std::string& kind,
                  const std::function<bool(const json&)>& extra = [](const json&) { return true; }) {
  std::size_t n = 0;
  for (const auto& c : report["cases"])
    if (c["case"] == kind && c["passed"].get<bool>() && extra(c)) ++n;
  return n;
}

// First case of the given kind; an empty object if there is none.
json first(const json& report, const std::string& kind) {
  for (const auto& c : report["cases"])
    if (c["case"] == kind) return c;
  return json::object();
}

void no_failures(Outcome& out, const json& report) {
  out.require(report["summary"]["failures"] == 0,
              label(report) + ": " + report["summary"]["failures"].dump() + " failing cases");
}

Outcome taylor() {
  Outcome out;
  for (const auto& [r, m] : {std::pair{1, 2}, {2, 3}, {3, 3}}) {
    const auto rep = run_suite("taylor-check", r, m, 100);
    no_failures(out, rep);
    out.require(count(rep, "taylor") == 100, label(rep) + ": expected 100 matching samples");
  }
  return out;
}

Outcome shuffle() {
  Outcome out;
  for (const auto& [r, m, terms] : {std::tuple{2, 2, 6}, {2, 3, 90}}) {
    const auto rep = run_suite("expand-check", r, m, 100);
    no_failures(out, rep);
    out.require(first(rep, "term-count")["terms"] == terms, label(rep) + ": term count");
    out.require(count(rep, "expansion") == 100, label(rep) + ": expected 100 agreeing tuples");
  }
  return out;
}

Outcome multiplicity() {
  Outcome out;
  for (const auto& [r, m] : {std::pair{2, 3}, {3, 3}}) {
    const auto rep = run_suite("multiplicity-bound", r, m, 1000);
    no_failures(out, rep);
    out.require(count(rep, "random") == 1000, label(rep) + ": expected 1000 random tuples within bound");
    out.require(count(rep, "repeated-slot") > 0 && count(rep, "common-vector") > 0 && count(rep, "diagonal") > 0,
                label(rep) + ": adversarial tuples missing");
  }
  return out;
}

Outcome rank_criterion() {
  Outcome out;
  for (const auto& [r, ss] : {std::pair{2, 2}, {3, 3}}) {
    const auto rep = run_suite("prop32", r, 3, 100);
    no_failures(out, rep);
    out.require(count(rep, "rank") == 100, label(rep) + ": expected 100 agreeing samples");
    std::size_t decomposable = 0;
    for (const auto& c : rep["cases"]) {
      decomposable += c["decomposable"].get<bool>();
      out.require(c["ranks"].size() == static_cast<std::size_t>(ss), label(rep) + ": s range");
    }
    out.require(decomposable > 0 && decomposable < 100, label(rep) + ": both oracle answers must occur");
  }
  return out;
}

Outcome classifier() {
  Outcome out;
  auto codim_is = [](std::size_t v) { return [v](const json& c) { return c["observed_codim"] == v; }; };
  auto codim_above = [](std::size_t v) {
    return [v](const json& c) { return c["observed_codim"].is_number() && c["observed_codim"].get<std::size_t>() > v; };
  };
  const auto r2 = run_suite("theorem31", 2, 3, 200);
  no_failures(out, r2);
  out.require(count(r2, "decomposable", codim_is(18)) == 200, "(2,3): 200 decomposable with c_o = 18");
  out.require(count(r2, "square-nonzero", [](const json& c) { return c["verdict"] == "FailsMultiplicity"; }) == 200,
              "(2,3): 200 FailsMultiplicity");

  const auto r3 = run_suite("theorem31", 3, 3, 100);
  no_failures(out, r3);
  out.require(count(r3, "decomposable", codim_is(40)) == 100, "(3,3): 100 decomposable with c_o = 40");
  out.require(count(r3, "indecomposable", codim_above(40)) == 100, "(3,3): 100 FailsTangentBound with c_o > 40");

  const auto r4 = run_suite("theorem31", 4, 3, 20);
  no_failures(out, r4);
  out.require(count(r4, "decomposable", codim_is(210)) == 20, "(4,3): 20 decomposable with c_o = 210");
  auto crafted = first(r4, "crafted");
  out.require(crafted.value("verdict", "") == "FailsTangentBound" && crafted["threshold"] == 210,
              "(4,3): crafted vector FailsTangentBound at threshold 210");
  return out;
}

Outcome degeneracy() {
  Outcome out;
  const auto rep = run_suite("thm38", 2, 3, 500);
  no_failures(out, rep);
  out.require(count(rep, "random") == 500, "500 random tuples agree");
  out.require(count(rep, "hyperplane", [](const json& c) { return c["ev_det"] == "0" && c["form"] == "0"; }) == 50,
              "50 hyperplane tuples vanish");
  return out;
}

Outcome divisor(std::vector<json>& divisor_reports) {
  Outcome out;
  for (const auto& [r, m] : {std::pair{1, 3}, {2, 3}, {2, 4}, {3, 3}}) {
    const auto rep = run_suite("p1-divisor", r, m, 200);
    no_failures(out, rep);
    auto factor = first(rep, "diagonal-factor");
    out.require(factor.value("all_matched", false) && factor["constant_c"] != "0",
                label(rep) + ": diagonal factor with nonzero constant");
    out.require(factor.value("power_matched", false), label(rep) + ": r-th power of the line divisor");
    out.require(count(rep, "pullback") == 200, label(rep) + ": 200 pullback tuples");
    if (r * m <= 6) out.require(count(rep, "symbolic") == 1, label(rep) + ": symbolic witness");
    divisor_reports.push_back(rep);
  }
  return out;
}

Outcome no_form() {
  Outcome out;
  for (const auto& splitting : {std::vector<int>{3, 1}, {4, 0}}) {
    const auto rep = run_suite("p1-no-form", 2, 3, 500, splitting);
    no_failures(out, rep);
    out.require(first(rep, "existence")["has_form"] == false, label(rep) + ": no form");
    out.require(count(rep, "vanishing") == 500, label(rep) + ": 500 vanishing tuples");
  }
  for (const auto& [r, m] : {std::pair{2, 3}, {3, 3}}) {
    const auto rep = run_suite("p1-no-form", r, m, 50, std::vector<int>(static_cast<std::size_t>(r), m - 1));
    no_failures(out, rep);
    out.require(first(rep, "existence")["has_form"] == true, label(rep) + ": balanced pair has a form");
  }
  return out;
}

Outcome determinant_map() {
  Outcome out;
  for (const auto& [r, m, rank] : {std::tuple{2, 3, 5}, {2, 4, 7}, {3, 3, 7}}) {
    const auto rep = run_suite("p1-detmap", r, m, 50);
    no_failures(out, rep);
    out.require(first(rep, "rank")["rank"] == rank, label(rep) + ": determinant map rank");
    out.require(first(rep, "span")["span"] == rank, label(rep) + ": span dimension");
    out.require(count(rep, "two-point", [](const json& c) { return c["surjective"] == true; }) == 50,
                label(rep) + ": 50 surjective point pairs");
    const auto lam = run_suite("p1-lambda", r, m, 50);
    no_failures(out, lam);
    out.require(count(lam, "evaluation") == 50, label(lam) + ": 50 evaluation functionals");
  }
  const auto skew = run_suite("p1-detmap", 2, 3, 50, {4, 0});
  no_failures(out, skew);
  out.require(count(skew, "two-point", [](const json& c) { return c["surjective"] == false; }) == 50,
              "(4,0): 50 non-surjective point pairs");
  return out;
}

Outcome invariance(const std::vector<json>& divisor_reports) {
  Outcome out;
  for (const auto& rep : divisor_reports) out.require(count(rep, "basis-change") >= 50, label(rep) + ": 50 basis changes");
  for (const auto& splitting : {std::vector<int>{3, 1}, {4, 0}}) {
    const auto rep = run_suite("p1-divisor", 2, 3, 50, splitting);
    no_failures(out, rep);
    out.require(count(rep, "basis-change") == 50, label(rep) + ": 50 basis changes");
  }
  return out;
}

}  // namespace

int main() {
  std::vector<json> divisor_reports;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 polar coefficients match interpolation at (1,2),(2,3),(3,3) x100", taylor},
      {"2 shuffle expansion counts 6/90 and agreement x100", shuffle},
      {"3 multiplicity at most m-1 over 1000 tuples plus adversarial", multiplicity},
      {"4 wedge rank bound with equality iff decomposable", rank_criterion},
      {"5 Grassmannian classifier at (2,3),(3,3),(4,3)", classifier},
      {"6 stacked determinant vanishes iff the form does, 500 + 50", degeneracy},
      {"7 balanced divisors: diagonal factor, power, pullback, symbolic", [&] { return divisor(divisor_reports); }},
      {"8 unbalanced pairs have no form; balanced pairs do", no_form},
      {"9 determinant map rank, span, two-point generation, lambda", determinant_map},
      {"10 basis changes scale the divisor by det(G)", [&] { return invariance(divisor_reports); }},
  };

  bool all = true;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %s (%.1f s)\n", outcome.ok ? "PASS" : "FAIL", name.c_str(), seconds);
    for (const auto& note : outcome.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    all = all && outcome.ok;
  }
  return all ? 0 : 1;
}
