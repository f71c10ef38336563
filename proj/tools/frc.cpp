// frc: command-line driver for FR codes and their hypergraphs.
//
// Exit codes: 0 success, 1 validation failure or violated bound, 2 parse
// error, 3 enumeration guard exceeded.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "frhyper/analysis.hpp"
#include "frhyper/bounds.hpp"
#include "frhyper/construct.hpp"
#include "frhyper/error.hpp"
#include "frhyper/frc_io.hpp"
#include "frhyper/model.hpp"

using namespace frhyper;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

FrcDocument load(const std::string& path) { return parse_frc(read_input(path)); }

FRCode load_code(const std::string& path) {
  auto doc = load(path);
  if (auto* code = std::get_if<FRCode>(&doc.body)) return *code;
  return hypergraph_to_fr(std::get<Hypergraph>(doc.body));
}

std::string join(const std::vector<Index>& values, bool one_based = false) {
  std::string out = "(";
  for (Index i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i] + (one_based ? 1 : 0));
  }
  return out + ")";
}

std::string node_list(const IdSet& nodes) {
  std::string out = "{";
  for (Index i = 0; i < nodes.size(); ++i) {
    if (i) out += ',';
    out += "U_" + std::to_string(nodes[i] + 1);
  }
  return out + "}";
}

// "1,3,5" -> 0-based ids
IdSet parse_id_list(const std::string& text, const char* what) {
  IdSet ids;
  if (text.empty()) return ids;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      unsigned long value = std::stoul(token, &used);
      if (used != token.size() || value == 0) throw std::invalid_argument(token);
      ids.push_back(value - 1);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("bad ") + what + " id '" + token + "'");
    }
  }
  return ids;
}

PacketPairing parse_pairing(const std::string& text) {
  PacketPairing pairing;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "pairing entries look like j:j'");
    }
    auto a = parse_id_list(token.substr(0, colon), "packet");
    auto b = parse_id_list(token.substr(colon + 1), "packet");
    if (a.size() != 1 || b.size() != 1) {
      throw Error(ErrorCode::InvalidArgument, "bad pairing entry '" + token + "'");
    }
    pairing.emplace_back(a[0], b[0]);
  }
  return pairing;
}

void print_flags(const ClassificationFlags& f) {
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "uniform: " << yes(f.uniform());
  if (f.uniform_size) std::cout << " (" << *f.uniform_size << ")";
  std::cout << "\nregular: " << yes(f.regular());
  if (f.regular_degree) std::cout << " (" << *f.regular_degree << ")";
  std::cout << "\nlinear: " << yes(f.linear) << "\nintersecting: " << yes(f.intersecting)
            << "\nconnected: " << yes(f.connected) << "\n";
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::MultipleOf: return "multiple of";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional repetition codes as hypergraphs"};
  app.require_subcommand(1);
  bool force = false;
  app.add_flag("--force", force, "Lift the enumeration guards");

  std::string input = "-";
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", input, "Input .frc document ('-' for stdin)");
  };

  auto* validate = app.add_subcommand("validate", "Check a document and print its parameters");
  add_input(validate);

  Index k = 0;
  Index file_size = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "M(k) table, repair degrees, d_min");
  analyze_cmd->add_option("--k", k, "Reconstruction degree")->required();
  analyze_cmd->add_option("--file-size", file_size, "File size M (default M(k))");
  add_input(analyze_cmd);

  std::string pairing_text;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate every applicable bound");
  bounds_cmd->add_option("--k", k, "Reconstruction degree for the M(k) bounds");
  bounds_cmd->add_option("--pairing", pairing_text, "Packet pairing j:j',... (1-based)");
  add_input(bounds_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Uniform/regular/linear/... flags");
  add_input(classify_cmd);

  auto* dual_cmd = app.add_subcommand("dual", "Print the dual structure");
  add_input(dual_cmd);

  std::string target = "fr";
  auto* convert_cmd = app.add_subcommand("convert", "Convert between fr and hypergraph form");
  convert_cmd->add_option("--to", target, "fr or hypergraph")
      ->required()
      ->check(CLI::IsMember({"fr", "hypergraph"}));
  add_input(convert_cmd);

  Index n = 0;
  Index rho_min = 2;
  Index theta = 0;
  std::uint64_t seed = 0;
  bool trace = false;
  auto* construct_cmd = app.add_subcommand("construct", "Grow a universally good adaptive code");
  construct_cmd->add_option("--n", n, "Number of nodes")->required();
  construct_cmd->add_option("--rho-min", rho_min, "Minimum replication factor")->required();
  auto* theta_opt = construct_cmd->add_option("--theta", theta, "Target number of packets");
  auto* seed_opt = construct_cmd->add_option("--seed", seed, "Seeded-random strategy");
  construct_cmd->add_flag("--trace", trace, "Emit the step trace as comments");
  construct_cmd->add_option("--to", target, "fr or hypergraph")
      ->check(CLI::IsMember({"fr", "hypergraph"}));

  std::string remove_nodes;
  std::string remove_packets;
  auto* adapt_cmd = app.add_subcommand("adapt", "Drop nodes and packets");
  adapt_cmd->add_option("--remove-nodes", remove_nodes, "Comma-separated 1-based node ids");
  adapt_cmd->add_option("--remove-packets", remove_packets, "Comma-separated 1-based packet ids");
  add_input(adapt_cmd);

  std::string k_range;
  auto* csv_cmd = app.add_subcommand("csv", "File-size CSV over a k range");
  csv_cmd->add_option("--k-range", k_range, "A..B")->required();
  add_input(csv_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitParse;
  }

  const EnumerationGuard guard = EnumerationGuard::from_environment(force);
  try {
    if (validate->parsed()) {
      auto doc = load(input);
      if (auto* h = std::get_if<Hypergraph>(&doc.body)) {
        std::cout << "kind: hypergraph\nvertices: " << h->num_vertices()
                  << "\nedges: " << h->num_edges() << "\n";
        hypergraph_to_fr(*h);  // throws when there is no FR counterpart
        std::cout << "fr-equivalent: yes\n";
        return 0;
      }
      const auto& code = std::get<FRCode>(doc.body);
      std::cout << "kind: fr\nn: " << code.num_nodes() << "\ntheta: " << code.num_packets()
                << "\nalpha_vec: " << join(code.storage_vector())
                << "\nrho_vec: " << join(code.replication_vector())
                << "\nalpha: " << code.max_storage() << "\nrho: " << code.max_replication()
                << "\n";
      return 0;
    }

    if (analyze_cmd->parsed()) {
      auto code = load_code(input);
      Index mk = max_file_size(code, k, guard);
      Index m = file_size ? file_size : mk;
      auto report = analyze(code, m, guard);
      for (Index i = 0; i < report.file_size_table.size(); ++i) {
        std::cout << "M(" << i + 1 << ") = " << report.file_size_table[i] << "\n";
      }
      std::cout << "file_size: " << m << "\nreconstruction_degree: "
                << report.reconstruction_degree << "\n";
      for (Index i = 0; i < report.repairs.size(); ++i) {
        std::cout << "d_" << i + 1 << " = ";
        if (report.repairs[i]) {
          std::cout << report.repairs[i]->degree << " via " << node_list(report.repairs[i]->helpers);
        } else {
          std::cout << "irreparable";
        }
        std::cout << "\n";
      }
      std::cout << "d = ";
      if (report.max_repair_degree) {
        std::cout << *report.max_repair_degree;
      } else {
        std::cout << "undefined";
      }
      std::cout << "\nd_min: " << report.min_distance << "\n";
      return 0;
    }

    if (bounds_cmd->parsed()) {
      auto code = load_code(input);
      std::optional<Index> kk;
      if (k) kk = k;
      auto report = check_bounds(code, kk, guard);
      bool ok = report.all_satisfied();
      for (const auto& e : report.entries) {
        std::cout << e.id << ": ";
        if (!e.applicable) {
          std::cout << "inapplicable (" << e.reason << ")\n";
          continue;
        }
        std::cout << to_string(e.lhs) << " " << relation_symbol(e.relation) << " "
                  << to_string(e.rhs) << " -> " << (e.satisfied ? "satisfied" : "VIOLATED")
                  << (e.tight ? ", tight" : "") << "\n";
      }
      if (kk) {
        auto dist = distance_bounds(code, *kk, guard);
        ok = ok && dist.satisfied;
        std::cout << "singleton_like: d_min = " << dist.observed << " <= " << dist.singleton_like
                  << " -> " << (dist.satisfied ? "satisfied" : "VIOLATED") << "\n";
        std::cout << "locally_repairable: ";
        if (dist.locally_repairable) {
          std::cout << "d_min = " << dist.observed << " vs " << *dist.locally_repairable
                    << (dist.locally_repairable_code ? "" : " (code is not locally repairable: k <= d)")
                    << "\n";
        } else {
          std::cout << "inapplicable (some node is irreparable)\n";
        }
        auto gfr = gfr_bound_check(code, *kk, guard);
        std::cout << "gfr: ";
        if (gfr.applicable) {
          std::cout << gfr.lhs << " >= " << gfr.rhs << " -> "
                    << (gfr.satisfied ? "satisfied" : "not satisfied (informational)")
                    << (gfr.tight ? ", tight" : "") << "\n";
        } else {
          std::cout << "inapplicable (" << gfr.reason << ")\n";
        }
      }
      if (!pairing_text.empty()) {
        auto pairing = check_pairing_bound(code, parse_pairing(pairing_text));
        std::cout << "pairing: ";
        if (pairing.hypothesis_holds) {
          std::cout << to_string(*pairing.sum) << " <= 1 -> "
                    << (*pairing.satisfied ? "satisfied" : "VIOLATED") << "\n";
          ok = ok && *pairing.satisfied;
        } else {
          std::cout << "inapplicable (pairing hypothesis fails)\n";
        }
      }
      return ok ? 0 : kExitViolation;
    }

    if (classify_cmd->parsed()) {
      auto doc = load(input);
      Hypergraph h = std::holds_alternative<FRCode>(doc.body)
                         ? fr_to_hypergraph(std::get<FRCode>(doc.body))
                         : std::get<Hypergraph>(doc.body);
      print_flags(classify(h));
      return 0;
    }

    if (dual_cmd->parsed()) {
      auto doc = load(input);
      if (auto* code = std::get_if<FRCode>(&doc.body)) {
        std::cout << serialize(dual(*code));
      } else {
        std::cout << serialize(dual(std::get<Hypergraph>(doc.body)).first);
      }
      return 0;
    }

    if (convert_cmd->parsed()) {
      auto doc = load(input);
      FrcDocument out = doc;
      if (target == "fr") {
        if (auto* h = std::get_if<Hypergraph>(&doc.body)) out.body = hypergraph_to_fr(*h);
      } else if (auto* code = std::get_if<FRCode>(&doc.body)) {
        out.body = fr_to_hypergraph(*code);
      }
      std::cout << serialize(out);
      return 0;
    }

    if (construct_cmd->parsed()) {
      StrategySpec strategy = seed_opt->count() ? StrategySpec::random(seed) : StrategySpec::greedy();
      std::optional<Index> theta_target;
      if (theta_opt->count()) theta_target = theta;
      auto state = grow_linear(n, rho_min, strategy, theta_target);
      FrcDocument doc{1, {}, hypergraph_to_fr(state.current())};
      if (target == "hypergraph") doc.body = state.current();
      if (state.relaxed()) doc.comments.push_back(" rho_min floor relaxed at some step");
      if (trace) {
        for (const auto& row : trace_rows(state)) doc.comments.push_back(" " + row);
      }
      std::cout << serialize(doc);
      return 0;
    }

    if (adapt_cmd->parsed()) {
      auto code = load_code(input);
      AdaptationSpec spec{parse_id_list(remove_nodes, "node"), parse_id_list(remove_packets, "packet")};
      std::cout << serialize(adapt(code, spec));
      return 0;
    }

    if (csv_cmd->parsed()) {
      auto dots = k_range.find("..");
      if (dots == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "--k-range expects A..B");
      }
      auto first = parse_id_list(k_range.substr(0, dots), "k");
      auto last = parse_id_list(k_range.substr(dots + 2), "k");
      if (first.size() != 1 || last.size() != 1) {
        throw Error(ErrorCode::InvalidArgument, "--k-range expects A..B");
      }
      std::cout << emit_filesize_csv(load_code(input), first[0] + 1, last[0] + 1, guard);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "frc: " << to_string(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SyntaxError: return kExitParse;
      case ErrorCode::InstanceTooLarge: return kExitGuard;
      default: return kExitViolation;
    }
  }
  return 0;
}
