#pragma once

#include <span>
#include <string>
#include <vector>

#include "planwb/cdpi.hpp"
#include "planwb/induction.hpp"

namespace planwb {

// One learning-task file produced by export_ilasp.
struct IlaspTask {
  std::string pred;   // subject predicate the file collects
  std::string path;   // file written
  int examples = 0;   // #pos blocks in the file
};

// Writes one ILASP-syntax task file per subject predicate, named
// `<stem>_<pred>.las`. Each file carries the predicate's mode declarations
// (realized from the matching bias: #modeh, #modeb per body template, the
// two comparison modes, and #constant lines for every grid threshold) and
// one `#pos(id, {inc}, {exc}, {ctx}).` block per example, in group order.
// Ranked examples get an `@rank` id suffix plus the weak-constraint search
// declarations (#modeo, #weight, #maxp). The predicate set is the union of
// subject predicates in `cdpis` and head predicates in `biases`, name-sorted,
// so an empty example list still yields one declarations-only file per bias.
// Output is byte-deterministic. Throws std::runtime_error on I/O failure,
// naming the path.
std::vector<IlaspTask> export_ilasp(std::span<const Cdpi> cdpis,
                                    std::span<const ModeBias> biases, const std::string& stem);

// Reads the #pos blocks of one exported file back into CDPIs: inclusion,
// exclusion, and context atoms verbatim, rank from the id's @suffix, group
// from the id's leading number. Declarations and comments are skipped.
// Throws std::runtime_error on unreadable files or malformed blocks.
std::vector<Cdpi> parse_ilasp_examples(const std::string& path);

}  // namespace planwb
