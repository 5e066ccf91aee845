#include "schurian/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "schurian/canon.hpp"
#include "schurian/closure.hpp"

namespace schurian {

namespace {

void parallel_for(int count, int jobs, const std::function<void(int)> &work) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct Survivor {
  bool kept = false;
  RelationMatrix canonical;
  std::optional<AssociationScheme> scheme;   // canonical scheme
  std::vector<Permutation> aut_gens;         // generators of Aut, on canonical points
  CharacterTable table;
};

}  // namespace

ClassifyResult classify(const std::vector<PermGroup> &groups, const PipelineConfig &cfg) {
  if (groups.empty()) return {};
  const int degree = groups[0].degree();
  for (const auto &g : groups) {
    if (g.degree() != degree) throw std::invalid_argument("classify: mixed degrees in input");
    if (!g.is_transitive()) throw std::invalid_argument("classify: intransitive member in input");
  }

  std::vector<std::optional<Survivor>> results(groups.size());
  parallel_for(static_cast<int>(groups.size()), cfg.jobs, [&](int i) {
    const PermGroup &g = groups[i];
    AssociationScheme k = schurian_scheme(g);
    PermGroup aut = aut_group(k);
    if (aut.order() != g.order()) return;
    for (const Permutation &p : aut.generators())
      if (!g.contains(p)) return;

    Survivor sv;
    sv.kept = true;
    CanonicalForm cf = canonical_form(k);
    sv.canonical = cf.matrix;
    sv.scheme = AssociationScheme::from_relation_matrix(cf.matrix);
    PermGroup conj = aut.conjugate(cf.point_map);
    sv.aut_gens = reduce_generating_set(degree, conj.generators());
    sv.table = character_table(*sv.scheme, cfg.spectral);
    results[i] = std::move(sv);
  });

  // deterministic merge: smallest input index represents each canonical form
  std::map<RelationMatrix, int> by_canonical;
  for (int i = 0; i < static_cast<int>(results.size()); ++i) {
    if (!results[i] || !results[i]->kept) continue;
    auto [it, fresh] = by_canonical.emplace(results[i]->canonical, i);
    if (!fresh && i < it->second) it->second = i;
  }

  ClassifyResult out;
  for (const auto &[matrix, index] : by_canonical) {
    Survivor &sv = *results[index];
    SchemeRecord rec;
    rec.matrix = sv.canonical;
    rec.aut_generators = sv.aut_gens;
    if (rec.aut_generators.empty()) rec.aut_generators.push_back(Permutation::identity(degree));
    rec.transitive_id = -1;  // external identifications are not available here
    rec.table = sv.table;
    rec.multiplicities = sv.table.multiplicities;
    out.records.push_back(std::move(rec));
    out.group_index.push_back(index + 1);
    out.schemes.push_back(std::move(*sv.scheme));
  }
  return out;
}

std::vector<ClosureRecord> closure_table(const std::vector<PermGroup> &groups,
                                         const ClassifyResult &classification,
                                         const PipelineConfig &cfg) {
  std::vector<ClosureRecord> out(groups.size());
  parallel_for(static_cast<int>(groups.size()), cfg.jobs, [&](int i) {
    AssociationScheme k = schurian_scheme(groups[i]);
    CanonicalForm cf = canonical_form(k);
    for (std::size_t r = 0; r < classification.records.size(); ++r) {
      if (classification.records[r].matrix == cf.matrix) {
        out[i] = {i + 1, classification.group_index[r]};
        return;
      }
    }
    throw ValidationError("no classified scheme is isomorphic to K(G) for input group " +
                          std::to_string(i + 1) + " (incomplete classification input)");
  });
  return out;
}

std::vector<CensusRow> run_census(const std::vector<SchemeRecord> &records) {
  std::map<int, std::vector<AssociationScheme>> by_order;
  for (const auto &r : records)
    by_order[r.matrix.n].push_back(AssociationScheme::from_relation_matrix(r.matrix));
  std::vector<CensusRow> rows;
  for (auto &[order, schemes] : by_order) rows.push_back(census_row(schemes));
  return rows;
}

std::string render_census(const std::vector<CensusRow> &rows, bool machine_readable) {
  std::ostringstream out;
  if (machine_readable) {
    for (const auto &r : rows) {
      out << "{\"order\":" << r.order << ",\"total\":" << r.total << ",\"stratifiable\":" << r.stratifiable
          << ",\"commutative\":" << r.commutative << ",\"symmetric\":" << r.symmetric
          << ",\"primitive\":" << r.primitive << ",\"metric\":" << r.metric << ",\"cometric\":" << r.cometric
          << ",\"thin\":" << r.thin << "}\n";
    }
    return out.str();
  }
  const char *headers[] = {"Order", "Total", "Strat.", "Com.", "Sym.", "Prim.", "Met.", "Comet.", "Thin"};
  for (const char *h : headers) out << (h == headers[0] ? "" : "  ") << h;
  out << "\n";
  for (const auto &r : rows) {
    int vals[] = {r.order, r.total, r.stratifiable, r.commutative, r.symmetric,
                  r.primitive, r.metric, r.cometric, r.thin};
    for (int i = 0; i < 9; ++i) {
      std::string v = std::to_string(vals[i]);
      std::string pad(std::string(headers[i]).size() > v.size() ? std::string(headers[i]).size() - v.size() : 0,
                      ' ');
      out << (i == 0 ? "" : "  ") << pad << v;
    }
    out << "\n";
  }
  return out.str();
}

void write_database_files(const std::string &out_dir, int degree,
                          const std::vector<SchemeRecord> &records,
                          const std::vector<ClosureRecord> &closures) {
  std::string base = out_dir.empty() ? "." : out_dir;
  {
    std::ofstream out(base + "/SchurianSchemes" + std::to_string(degree));
    if (!out) throw ValidationError("cannot write to " + base);
    write_scheme_database(out, records);
  }
  {
    std::ofstream out(base + "/TwoClosures" + std::to_string(degree));
    if (!out) throw ValidationError("cannot write to " + base);
    write_closure_database(out, closures);
  }
}

}  // namespace schurian
