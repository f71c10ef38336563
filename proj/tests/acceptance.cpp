// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <path to frc executable>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixture_io.hpp"
#include "frhyper/analysis.hpp"
#include "frhyper/bounds.hpp"
#include "frhyper/construct.hpp"
#include "frhyper/error.hpp"
#include "frhyper/frc_io.hpp"
#include "frhyper/model.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace frhyper;

namespace {

std::string g_frc;

// Collects failed expectations for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (got == want) return;
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want;
    expect(false, s.str());
  }
};

struct Run {
  int status = -1;
  std::string out;
};

Run run_frc(const std::string& args) {
  Run r;
  std::string cmd = "'" + g_frc + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

FRCode load_fr(const std::string& name) {
  return std::get<FRCode>(parse_frc(fixture::read(name)).body);
}

std::string vec(const std::vector<Index>& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Node contents as sets, after applying a packet relabeling.
bool same_up_to_packet_relabeling(const FRCode& a, const FRCode& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_packets() != b.num_packets()) return false;
  std::vector<Index> perm(a.num_packets());
  std::iota(perm.begin(), perm.end(), Index{0});
  do {
    bool all = true;
    for (Index i = 0; i < a.num_nodes() && all; ++i) {
      IdSet mapped;
      for (Index p : a.node(i)) mapped.push_back(perm[p]);
      std::sort(mapped.begin(), mapped.end());
      all = mapped == b.node(i);
    }
    if (all) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

void partitions(Index total, Index cap, std::vector<Index>& cur,
                std::vector<std::vector<Index>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  for (Index part = std::min(total, cap); part >= 1; --part) {
    cur.push_back(part);
    partitions(total - part, part, cur, out);
    cur.pop_back();
  }
}

// ---------------------------------------------------------------------------

void reference_code(Check& c) {
  auto code = load_fr("asym5.frc");
  c.equal(vec(code.storage_vector()), std::string("(4,3,2,2,2)"), "alpha_vec");
  c.equal(vec(code.replication_vector()), std::string("(2,2,2,2,2,3)"), "rho_vec");
  c.equal(code.max_storage(), Index{4}, "alpha");
  c.equal(code.max_replication(), Index{3}, "rho");
  c.equal(max_file_size(code, 3), Index{5}, "M(3)");
  c.equal(reconstruction_degree(code, 5), Index{3}, "reconstruction degree for M=5");
  auto r = repair_degree(code, 1);
  c.equal(r.degree, Index{3}, "d_2");
  c.expect(r.helpers == IdSet{0, 2, 3} || r.helpers == IdSet{0, 2, 4}, "d_2 witness");
  c.equal(max_repair_degree(code), Index{4}, "d");
}

void universally_good(Check& c) {
  c.expect(is_universally_good(load_fr("asym5.frc")), "five-node code is universally good");
  c.expect(is_universally_good(load_fr("k4.frc")), "K4 code is universally good");
  std::mt19937_64 rng(2024);
  int linear = 0;
  for (int t = 0; t < 1000; ++t) {
    auto code = gen::random_code(rng, 8, 10);
    auto h = fr_to_hypergraph(code);
    bool good = is_universally_good(code);
    linear += good;
    c.expect(good == classify(h).linear, "equivalence on random code " + std::to_string(t));
    c.expect(good == oracle::is_linear(h), "oracle agreement on random code " + std::to_string(t));
  }
  c.expect(linear >= 100 && linear <= 900, "random sample mixes linear and non-linear codes");
}

void bound_suite(Check& c) {
  auto side = [&](const BoundReport& r, const char* id, Rational lhs, Rational rhs, bool tight) {
    const BoundEntry* e = r.find(id);
    if (!e) return c.expect(false, std::string("missing ") + id);
    c.expect(e->applicable, std::string(id) + " applicable");
    c.equal(to_string(e->lhs), to_string(lhs), std::string(id) + " lhs");
    c.equal(to_string(e->rhs), to_string(rhs), std::string(id) + " rhs");
    c.expect(e->satisfied, std::string(id) + " satisfied");
    c.expect(e->tight == tight, std::string(id) + " tightness");
  };
  auto k4 = check_bounds(load_fr("k4.frc"));
  side(k4, "linear.uniform_packets", 6, Rational(12, 2), true);
  side(k4, "linear.regular_nodes", 4, 5, false);
  side(k4, "uniform.divisible", 12, 2, false);
  side(k4, "uniform.total", 12, 6, false);
  side(k4, "uniform.max_capacity", 3, 6, false);
  auto asym = check_bounds(load_fr("asym5.frc"));
  side(asym, "linear.node_pairs", 8, 10, false);
  side(asym, "linear.packet_pairs", 12, 15, false);
  side(asym, "antichain.lym", Rational(19, 60), 1, false);
  side(asym, "antichain.sperner", 5, 20, false);
}

void dual_check(Check& c) {
  auto h = std::get<Hypergraph>(parse_frc(fixture::read("dual_source.frc")).body);
  auto d = dual(h).first;
  c.equal(d.num_vertices(), Index{4}, "dual vertex count");
  c.expect(d.edges() == std::vector<IdSet>{{0}, {2}, {0, 1}, {0, 1, 2}, {3}}, "dual edges");
  c.equal(serialize(d), std::string("FRC 1\nhg 4 5\n1\n3\n1 2\n1 2 3\n4\n"), "dual document");
  std::mt19937_64 rng(77);
  for (int t = 0; t < 1000; ++t) {
    auto g = gen::random_hypergraph(rng, 8, 10);
    auto once = dual(g).first;
    c.expect(once == oracle::transpose(g), "dual is the transpose, sample " + std::to_string(t));
    c.expect(serialize(dual(once).first) == serialize(g), "involution, sample " + std::to_string(t));
  }
}

void construction(Check& c) {
  auto run = run_frc("construct --n 4 --rho-min 2 --theta 6 --trace");
  c.equal(run.status, 0, "construct exit status");
  std::vector<std::string> steps;
  std::istringstream lines(run.out);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("# step ", 0) == 0) steps.push_back(line.substr(2));
  }
  FRCode built = load_fr("single.frc");
  try {
    auto doc = parse_frc(run.out);
    built = std::get<FRCode>(doc.body);
  } catch (const std::exception& e) {
    return c.expect(false, std::string("construct output does not parse: ") + e.what());
  }
  c.expect(is_universally_good(built), "constructed code is linear");
  c.expect(same_up_to_packet_relabeling(built, load_fr("k4.frc")),
           "constructed code matches the K4 code up to packet relabeling");

  // Four coarse steps: the triangle (initial edge plus one growth and one
  // densification row here), then a new vertex, then two new edges.
  auto state = grow_linear(4, 2, StrategySpec::greedy(), 6);
  const auto& hist = state.history();
  c.equal(hist.size(), std::size_t{6}, "history rows");
  c.equal(steps.size(), hist.size(), "trace rows printed");
  if (hist.size() == 6) {
    c.expect(hist[2].snapshot == Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}}), "step 1: triangle");
    c.expect(hist[3].kind == StepKind::AddVertexWithEdge && hist[3].snapshot.edge(3) == IdSet{0, 3},
             "step 2: new vertex v4 with {v1,v4}");
    c.expect(hist[4].kind == StepKind::AddHyperedge && hist[4].snapshot.edge(4) == IdSet{1, 3},
             "step 3: edge {v2,v4}");
    c.expect(hist[5].kind == StepKind::AddHyperedge && hist[5].snapshot.edge(5) == IdSet{2, 3},
             "step 4: edge {v3,v4}");
  }
  if (steps.size() == 6) {
    c.expect(steps[3].find("| add-vertex-with-edge | E_4={v_1,v_4} |") != std::string::npos, "printed step 2");
    c.expect(steps[4].find("| add-hyperedge | E_5={v_2,v_4} |") != std::string::npos, "printed step 3");
    c.expect(steps[5].find("| add-hyperedge | E_6={v_3,v_4} |") != std::string::npos, "printed step 4");
  }

  for (Index rho_min = 2; rho_min <= 3; ++rho_min) {
    for (Index n = 3; n <= 12; ++n) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::string tag = "n=" + std::to_string(n) + " rho_min=" + std::to_string(rho_min) +
                                " seed=" + std::to_string(seed);
        auto s = grow_linear(n, rho_min, StrategySpec::random(seed));
        c.expect(oracle::is_linear(s.current()), "linear, " + tag);
        c.expect(is_universally_good(hypergraph_to_fr(s.current())), "universally good, " + tag);
        for (Index t = 0; t + 1 < s.history().size(); ++t) {
          auto before = hypergraph_to_fr(s.history()[t].snapshot);
          auto after = hypergraph_to_fr(s.history()[t + 1].snapshot);
          c.expect(is_adaptation_of(before, after).has_value(),
                   "adaptation between steps " + std::to_string(t + 1) + " and " +
                       std::to_string(t + 2) + ", " + tag);
        }
      }
    }
  }
}

void existence(Check& c) {
  std::vector<std::vector<Index>> all;
  for (Index total = 1; total <= 12; ++total) {
    std::vector<Index> cur;
    partitions(total, total, cur, all);
  }
  std::mt19937_64 rng(6);
  std::size_t pairs = 0, realizable = 0;
  for (const auto& alpha : all) {
    for (const auto& rho : all) {
      ++pairs;
      // Partitions cover every pair up to reordering; a shuffled copy checks
      // that the order of entries does not matter.
      for (int variant = 0; variant < 2; ++variant) {
        DegreeSequencePair seq{alpha, rho};
        if (variant == 1) {
          if (alpha.size() + rho.size() == 2) break;
          std::shuffle(seq.alpha.begin(), seq.alpha.end(), rng);
          std::shuffle(seq.rho.begin(), seq.rho.end(), rng);
        }
        const std::string tag = "alpha=" + vec(seq.alpha) + " rho=" + vec(seq.rho);
        bool exists = oracle::MatrixSearch(seq.alpha, seq.rho).feasible();
        realizable += exists && variant == 0;
        bool valid = std::all_of(seq.rho.begin(), seq.rho.end(),
                                 [&](Index r) { return r <= seq.alpha.size(); });
        if (!valid) {
          c.expect(!exists, "oversized replication factor yet realizable, " + tag);
          continue;
        }
        auto verdict = existence_check(seq);
        c.expect(verdict != ExistenceVerdict::SufficientPass || exists,
                 "SufficientPass but unrealizable, " + tag);
        try {
          auto code = realize(seq);
          c.expect(exists, "realize succeeded where the search found nothing, " + tag);
          c.expect(code.storage_vector() == seq.alpha && code.replication_vector() == seq.rho,
                   "realized vectors differ, " + tag);
        } catch (const Error&) {
          c.expect(!exists, "realize failed on a realizable pair, " + tag);
        }
      }
    }
  }
  c.expect(pairs > 70000, "enumeration size");
  c.expect(realizable > 1000, "realizable pairs seen");
}

void properties(Check& c) {
  std::vector<FRCode> codes;
  std::mt19937_64 rng(99);
  for (int t = 0; t < 600; ++t) codes.push_back(gen::random_code(rng, 8, 10));
  for (Index n = 2; n <= 9; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      codes.push_back(hypergraph_to_fr(grow_linear(n, 2, StrategySpec::random(seed)).current()));

  std::size_t linear = 0;
  for (std::size_t t = 0; t < codes.size(); ++t) {
    const auto& code = codes[t];
    const std::string tag = " (code " + std::to_string(t) + ")";
    const Index n = code.num_nodes();
    auto table = file_size_table(code);
    c.expect(table == oracle::file_size_table(code), "M(k) against enumeration" + tag);
    auto asc = code.storage_vector();
    std::sort(asc.begin(), asc.end());
    const bool lin = is_universally_good(code);
    linear += lin;
    long long smallest = 0, largest = 0;
    for (Index k = 1; k <= n; ++k) {
      smallest += asc[k - 1];
      largest += asc[n - k];
      const long long mk = table[k - 1];
      const long long pairs = static_cast<long long>(k * (k - 1) / 2);
      if (k > 1) c.expect(table[k - 2] <= table[k - 1], "monotone" + tag);
      c.expect(mk <= largest, "sandwich upper side" + tag);
      if (lin) c.expect(mk >= smallest - pairs, "universally good lower bound" + tag);

      auto d = distance_bounds(code, k);
      const long long alpha = code.max_storage();
      const long long bound = static_cast<long long>(n) - (mk + alpha - 1) / alpha + 1;
      c.equal(d.singleton_like, bound, "singleton-like value" + tag);
      c.equal(d.observed, oracle::min_distance(code, mk), "observed d_min" + tag);
      c.expect(static_cast<long long>(d.observed) <= bound, "singleton-like bound" + tag);
    }
  }
  c.expect(linear >= 100, "linear codes in the sample");

  auto spot = distance_bounds(load_fr("asym5.frc"), 3);
  c.equal(spot.singleton_like, 4LL, "five-node code, k=3 bound");
  c.equal(spot.observed, Index{3}, "five-node code, k=3 observed");
}

void format_cli(Check& c) {
  namespace fs = std::filesystem;
  for (const auto& entry : fs::directory_iterator(fixture::dir())) {
    if (entry.path().extension() != ".frc") continue;
    auto text = fixture::read_file(entry.path());
    auto doc = parse_frc(text);
    c.expect(parse_frc(serialize(doc)) == doc, "round trip " + entry.path().filename().string());
    c.expect(serialize(doc) == text, "canonical fixture " + entry.path().filename().string());
    c.equal(run_frc("validate " + quoted(entry.path())).status, 0,
            "validate " + entry.path().filename().string());
  }

  const std::map<std::string, int> corrupt = {
      {"bad_version.frc", 2},  {"crlf.frc", 2},         {"descending.frc", 2},
      {"double_space.frc", 2}, {"leading_zero.frc", 2}, {"missing_row.frc", 2},
      {"duplicate.frc", 1},    {"empty_node.frc", 1},   {"orphan.frc", 1},
      {"out_of_range.frc", 1},
  };
  for (const auto& [name, status] : corrupt) {
    c.equal(run_frc("validate " + quoted(fixture::dir() / "corrupt" / name)).status, status,
            "validate corrupt/" + name);
  }

  const auto asym5 = quoted(fixture::dir() / "asym5.frc");
  c.equal(run_frc("analyze --k 15 " + quoted(fixture::dir() / "wide.frc")).status, 3,
          "guard exceeded");
  c.equal(run_frc("analyze --k 9 " + asym5).status, 1, "k out of range");
  c.equal(run_frc("analyze --bogus " + asym5).status, 2, "unknown flag");
  c.equal(run_frc("bounds --k 3 " + asym5).status, 0, "bounds satisfied");

  auto nonlinear = fs::temp_directory_path() / "frhyper_acceptance_nonlinear.frc";
  {
    std::FILE* f = std::fopen(nonlinear.c_str(), "w");
    std::fputs("FRC 1\nfr 3 3\n1 2\n1 2 3\n3\n", f);
    std::fclose(f);
  }
  auto nl = run_frc("bounds --k 2 " + quoted(nonlinear));
  c.equal(nl.status, 0, "bounds on a non-linear code");
  c.expect(nl.out.find("linear.node_pairs: inapplicable") != std::string::npos,
           "linear-only bound reported inapplicable");
  fs::remove(nonlinear);

  auto csv = run_frc("csv --k-range 1..5 " + asym5);
  c.equal(csv.status, 0, "csv exit status");
  auto mk = oracle::file_size_table(load_fr("asym5.frc"));
  std::vector<std::string> column;
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  c.equal(line, std::string("k,M_k,ug_lower_bound,upper_bound"), "csv header");
  while (std::getline(lines, line)) {
    auto a = line.find(','), b = line.find(',', a + 1);
    column.push_back(line.substr(a + 1, b - a - 1));
  }
  std::vector<std::string> want;
  for (Index v : mk) want.push_back(std::to_string(v));
  c.expect(column == want, "csv M_k column equals enumeration " + vec(mk));
  c.equal(run_frc("csv --k-range 1..5 " + asym5).out, csv.out, "csv determinism");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <frc executable>\n";
    return 2;
  }
  g_frc = argv[1];

  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"reference code reproduction", reference_code},
      {"universally good check", universally_good},
      {"bound suite", bound_suite},
      {"worked dual and involution", dual_check},
      {"construction", construction},
      {"existence and realization", existence},
      {"property suites", properties},
      {"format and cli", format_cli},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = check.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first
              << "\n";
    for (const auto& f : check.failures) std::cout << "      " << f << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
