#include "frhyper/frc_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "frhyper/error.hpp"

namespace frhyper {

namespace {

[[noreturn]] void syntax_error(Index line, const std::string& reason) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + reason, line);
}

Index parse_number(std::string_view token, Index line) {
  if (token.empty()) syntax_error(line, "empty field (use single spaces between ids)");
  if (token.size() > 1 && token[0] == '0') syntax_error(line, "leading zero in '" + std::string(token) + "'");
  Index value = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    syntax_error(line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  if (line.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(' ', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Ascending 1-based ids -> 0-based ids. Equal neighbours are kept so that the
// model reports them as duplicates.
IdSet parse_ids(std::string_view text, Index line) {
  IdSet ids;
  for (auto token : split_spaces(text)) {
    Index id = parse_number(token, line);
    if (id == 0) syntax_error(line, "ids are 1-based");
    if (!ids.empty() && id - 1 < ids.back()) syntax_error(line, "ids must be ascending");
    ids.push_back(id - 1);
  }
  return ids;
}

void append_ids(std::string& out, const IdSet& ids) {
  for (Index pos = 0; pos < ids.size(); ++pos) {
    if (pos) out += ' ';
    out += std::to_string(ids[pos] + 1);
  }
  out += '\n';
}

}  // namespace

FrcDocument parse_frc(std::string_view text) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start < text.size()) {
      auto pos = text.find('\n', start);
      if (pos == std::string_view::npos) {
        lines.push_back(text.substr(start));
        break;
      }
      lines.push_back(text.substr(start, pos - start));
      start = pos + 1;
    }
  }
  for (Index i = 0; i < lines.size(); ++i) {
    if (lines[i].find('\r') != std::string_view::npos) syntax_error(i + 1, "CR line ending");
  }
  if (lines.empty()) syntax_error(1, "empty document");
  if (lines[0].substr(0, 4) != "FRC ") syntax_error(1, "expected 'FRC 1' header");
  if (parse_number(lines[0].substr(4), 1) != 1) syntax_error(1, "unsupported format version");

  std::vector<std::string> comments;
  std::vector<std::pair<Index, std::string_view>> content;  // (line number, text)
  for (Index i = 1; i < lines.size(); ++i) {
    if (!lines[i].empty() && lines[i][0] == '#') {
      comments.emplace_back(lines[i].substr(1));
    } else {
      content.emplace_back(i + 1, lines[i]);
    }
  }
  if (content.empty()) syntax_error(lines.size() + 1, "missing 'fr' or 'hg' line");

  const auto [kind_line, kind_text] = content.front();
  auto fields = split_spaces(kind_text);
  if (fields.size() != 3 || (fields[0] != "fr" && fields[0] != "hg")) {
    syntax_error(kind_line, "expected 'fr <n> <theta>' or 'hg <vertices> <edges>'");
  }
  const bool is_fr = fields[0] == "fr";
  const Index first = parse_number(fields[1], kind_line);
  const Index second = parse_number(fields[2], kind_line);
  const Index rows = is_fr ? first : second;

  if (content.size() - 1 != rows) {
    Index where = content.size() - 1 < rows ? lines.size() + 1 : content[rows + 1].first;
    syntax_error(where, "expected " + std::to_string(rows) + " body lines, found " +
                            std::to_string(content.size() - 1));
  }
  std::vector<IdSet> body;
  body.reserve(rows);
  for (Index r = 1; r <= rows; ++r) body.push_back(parse_ids(content[r].second, content[r].first));

  if (is_fr) {
    return FrcDocument{1, std::move(comments), validate_fr(std::move(body), second)};
  }
  return FrcDocument{1, std::move(comments), Hypergraph(first, std::move(body))};
}

namespace {

std::string serialize_body(const std::vector<std::string>& comments, const std::string& kind_line,
                           const std::vector<IdSet>& rows) {
  std::string out = "FRC 1\n";
  for (const auto& c : comments) out += "#" + c + "\n";
  out += kind_line;
  for (const auto& row : rows) append_ids(out, row);
  return out;
}

}  // namespace

std::string serialize(const FrcDocument& doc) {
  if (const auto* code = std::get_if<FRCode>(&doc.body)) {
    return serialize_body(doc.comments,
                          "fr " + std::to_string(code->num_nodes()) + " " +
                              std::to_string(code->num_packets()) + "\n",
                          code->nodes());
  }
  const auto& h = std::get<Hypergraph>(doc.body);
  return serialize_body(doc.comments,
                        "hg " + std::to_string(h.num_vertices()) + " " +
                            std::to_string(h.num_edges()) + "\n",
                        h.edges());
}

std::string serialize(const FRCode& code) { return serialize(FrcDocument{1, {}, code}); }
std::string serialize(const Hypergraph& h) { return serialize(FrcDocument{1, {}, h}); }

std::string emit_filesize_csv(const FRCode& code, Index k_first, Index k_last,
                              const EnumerationGuard& guard) {
  const Index n = code.num_nodes();
  if (k_first < 1 || k_first > k_last || k_last > n) {
    throw Error(ErrorCode::KOutOfRange, "k range " + std::to_string(k_first) + ".." +
                                            std::to_string(k_last) + " outside 1.." +
                                            std::to_string(n));
  }
  auto ascending = code.storage_vector();
  std::sort(ascending.begin(), ascending.end());

  std::string out = "k,M_k,ug_lower_bound,upper_bound\n";
  for (Index k = k_first; k <= k_last; ++k) {
    long long smallest = 0;
    long long largest = 0;
    for (Index i = 0; i < k; ++i) {
      smallest += static_cast<long long>(ascending[i]);
      largest += static_cast<long long>(ascending[n - 1 - i]);
    }
    const long long pairs = static_cast<long long>(k * (k - 1) / 2);
    out += std::to_string(k) + "," + std::to_string(max_file_size(code, k, guard)) + "," +
           std::to_string(smallest - pairs) + "," + std::to_string(largest) + "\n";
  }
  return out;
}

std::string format_nodes(const FRCode& code) {
  std::string out;
  for (Index i = 0; i < code.num_nodes(); ++i) {
    if (i) out += ' ';
    out += "U_" + std::to_string(i + 1) + "={";
    const auto& node = code.node(i);
    for (Index pos = 0; pos < node.size(); ++pos) {
      if (pos) out += ',';
      out += "P_" + std::to_string(node[pos] + 1);
    }
    out += '}';
  }
  return out;
}

std::vector<std::string> trace_rows(const ConstructionState& state) {
  std::vector<std::string> rows;
  for (const auto& entry : state.history()) {
    std::ostringstream row;
    row << "step " << entry.step << " | " << to_string(entry.kind);
    if (entry.edge < entry.snapshot.num_edges()) {
      row << " | E_" << entry.edge + 1 << "={";
      const auto& edge = entry.snapshot.edge(entry.edge);
      for (Index pos = 0; pos < edge.size(); ++pos) {
        row << (pos ? "," : "") << "v_" << edge[pos] + 1;
      }
      row << "}";
    } else {
      row << " | -";
    }
    row << (entry.relaxed ? " (relaxed)" : "") << " | ";
    try {
      row << format_nodes(hypergraph_to_fr(entry.snapshot));
    } catch (const Error&) {
      row << "(no FR counterpart yet)";
    }
    rows.push_back(row.str());
  }
  return rows;
}

}  // namespace frhyper
