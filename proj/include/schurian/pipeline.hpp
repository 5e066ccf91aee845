#ifndef SCHURIAN_PIPELINE_HPP
#define SCHURIAN_PIPELINE_HPP

#include <string>
#include <vector>

#include "schurian/dbio.hpp"
#include "schurian/perm.hpp"
#include "schurian/scheme.hpp"
#include "schurian/spectral.hpp"

namespace schurian {

struct PipelineConfig {
  int jobs = 1;
  SpectralConfig spectral;
};

struct ClassifyResult {
  std::vector<SchemeRecord> records;       // sorted by canonical relation matrix
  std::vector<int> group_index;            // 1-based input index backing each record
  std::vector<AssociationScheme> schemes;  // canonical schemes, aligned with records
};

// The classification loop: keep K(G) iff G is its full automorphism group,
// deduplicate survivors by canonical form (the input may contain conjugate
// repeats), emit records with character tables. Work fans out over groups;
// the result is independent of jobs and scheduling. Throws
// std::invalid_argument on mixed degrees or an intransitive member.
ClassifyResult classify(const std::vector<PermGroup> &groups, const PipelineConfig &cfg = {});

// For each input group, the index of the unique classified scheme its
// orbital scheme is isomorphic to: record {i, group_index of that scheme}.
// Throws ValidationError if some group matches nothing (incomplete
// classification input).
std::vector<ClosureRecord> closure_table(const std::vector<PermGroup> &groups,
                                         const ClassifyResult &classification,
                                         const PipelineConfig &cfg = {});

// Census rows per order present in the records.
std::vector<CensusRow> run_census(const std::vector<SchemeRecord> &records);

// Aligned text table, or one machine-readable line per row.
std::string render_census(const std::vector<CensusRow> &rows, bool machine_readable = false);

// Writes SchurianSchemes<N> and TwoClosures<N> under out_dir.
void write_database_files(const std::string &out_dir, int degree,
                          const std::vector<SchemeRecord> &records,
                          const std::vector<ClosureRecord> &closures);

}  // namespace schurian

#endif
