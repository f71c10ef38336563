#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "frhyper/analysis.hpp"
#include "frhyper/construct.hpp"
#include "frhyper/model.hpp"

namespace frhyper {

// The .frc text format (UTF-8, LF line endings):
//
//   FRC 1
//   fr <n> <theta>            or   hg <num_vertices> <num_edges>
//   <n (or num_edges) lines of space-separated ascending 1-based ids>
//
// Lines starting with '#' are comments and may appear anywhere after the
// first line. Serialization writes the comments right after the header.

enum class DocumentKind { Fr, Hypergraph };

struct FrcDocument {
  int version = 1;
  std::vector<std::string> comments;  // text after '#'
  std::variant<FRCode, Hypergraph> body;

  DocumentKind kind() const noexcept {
    return std::holds_alternative<FRCode>(body) ? DocumentKind::Fr : DocumentKind::Hypergraph;
  }
  friend bool operator==(const FrcDocument&, const FrcDocument&) = default;
};

/// Grammar violations throw Error(SyntaxError) with the 1-based line number as
/// index. Structural problems of a well-formed document (empty node, orphan
/// packet, duplicate or out-of-range id) surface as the core-model errors.
FrcDocument parse_frc(std::string_view text);

std::string serialize(const FrcDocument& doc);
std::string serialize(const FRCode& code);
std::string serialize(const Hypergraph& h);

/// `k,M_k,ug_lower_bound,upper_bound` for k in [k_first, k_last], where
/// ug_lower_bound sums the k smallest capacities minus C(k,2) and
/// upper_bound sums the k largest.
std::string emit_filesize_csv(const FRCode& code, Index k_first, Index k_last,
                              const EnumerationGuard& guard = {});

/// "U_1={P_1,P_2} U_2={P_1}".
std::string format_nodes(const FRCode& code);

/// One row per history entry: step, operation, touched edge and the
/// node contents of the resulting FR code.
std::vector<std::string> trace_rows(const ConstructionState& state);

}  // namespace frhyper
