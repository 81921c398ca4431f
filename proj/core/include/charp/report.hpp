#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charp/cartier.hpp"
#include "charp/json.hpp"
#include "charp/valuation.hpp"

namespace charp {

// Static table of the implications a report may use. Verdicts cite entries by
// id; the table is the only place mathematical claims are asserted.
struct KnowledgeEntry {
  enum class Kind { Theorem, Definition };
  std::string_view id;
  Kind kind;
  std::string_view statement;
};

std::span<const KnowledgeEntry> knowledge_base();
const KnowledgeEntry* find_knowledge(std::string_view id);

struct Evidence {
  std::string id;
  std::string claim;
  Json witness;
  std::string supports;  // knowledge base id
};

struct Assumption {
  std::string id;
  std::string statement;
  std::string provenance;
};

struct Verdict {
  std::string id;
  std::string claim;
  std::string by;                 // knowledge base id
  std::vector<std::string> from;  // evidence, assumption or earlier verdict ids
};

struct ExcellenceReport {
  Json subject;
  std::vector<Evidence> evidence;
  std::vector<Assumption> assumptions;
  std::vector<Verdict> verdicts;

  Json to_json() const;
  std::string to_text() const;
};

// Every verdict cites a knowledge base entry and rests only on evidence,
// assumptions or earlier verdicts (so the chain is acyclic). Returns the
// first problem found, or an empty string.
std::string validate(const ExcellenceReport& report);

// Evidence that k[x_1..x_n] over F_{p^m} is F-finite and Frobenius split.
ExcellenceReport f_finite_report(std::uint32_t p, unsigned m, std::size_t nvars,
                                 std::uint64_t e);

struct DvrReportOptions {
  std::size_t samples = 50;
  std::uint64_t seed = 0;
};

// Non-divisoriality evidence and the resulting negative verdict chain for an
// embedding valuation whose images are transcendental by assumption.
ExcellenceReport dvr_report(const EmbeddingValuation& valuation,
                            const DvrReportOptions& options = {});

// Reports for two embeddings of k(x, y), each cross-referencing the fraction
// that lies in exactly one of the two valuation rings.
std::pair<ExcellenceReport, ExcellenceReport> dvr_pair_reports(
    const EmbeddingValuation& a, const EmbeddingValuation& b,
    const DvrReportOptions& options = {});

struct SolidityWitness {
  MultiPoly lambda;
  MultiPoly value;
};

// For s != 0: s is a root of T^(p^e) - s^(p^e) over R^(p^e), so with
// lambda = s^(p^e - 1) the functional phi(lambda * -) sends s to
// s * phi(1) != 0. NotSolid when phi(1) == 0.
SolidityWitness solidity_witness(const CartierMap& phi, const MultiPoly& s);

}  // namespace charp
