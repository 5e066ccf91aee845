#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "schurian/canon.hpp"
#include "schurian/closure.hpp"
#include "schurian/dbio.hpp"
#include "schurian/oracle.hpp"
#include "schurian/pipeline.hpp"
#include "schurian/scheme.hpp"
#include "schurian/spectral.hpp"

namespace {

using namespace schurian;

std::string property_summary(const AssociationScheme &s) {
  std::string out = "valid, d=" + std::to_string(s.classes());
  if (s.is_symmetric()) out += ", symmetric";
  if (s.is_commutative()) out += ", commutative";
  if (s.is_stratifiable()) out += ", stratifiable";
  if (s.is_thin()) out += ", thin";
  if (s.is_primitive()) out += ", primitive";
  if (is_metric(s)) out += ", metric";
  if (is_cometric(s)) out += ", cometric";
  return out;
}

std::string property_json(const AssociationScheme &s) {
  std::ostringstream out;
  out << "{\"valid\":true,\"n\":" << s.order() << ",\"d\":" << s.classes()
      << ",\"symmetric\":" << (s.is_symmetric() ? "true" : "false")
      << ",\"commutative\":" << (s.is_commutative() ? "true" : "false")
      << ",\"stratifiable\":" << (s.is_stratifiable() ? "true" : "false")
      << ",\"thin\":" << (s.is_thin() ? "true" : "false")
      << ",\"primitive\":" << (s.is_primitive() ? "true" : "false")
      << ",\"metric\":" << (is_metric(s) ? "true" : "false")
      << ",\"cometric\":" << (is_cometric(s) ? "true" : "false") << "}";
  return out.str();
}

void print_group(const PermGroup &g) {
  std::cout << "order " << g.order().to_string() << "\n";
  for (const Permutation &p : g.generators()) std::cout << format_cycles(p) << "\n";
  if (g.generators().empty()) std::cout << "()\n";
}

void print_table(const AssociationScheme &s, const CharacterTable &t) {
  for (int r = 0; r < t.row_count(); ++r) {
    std::cout << "[ ";
    for (int i = 0; i < t.column_count(); ++i) {
      if (i) std::cout << ", ";
      std::cout << format_algebraic(t.rows[r][i]);
    }
    std::cout << " ]  multiplicity " << t.multiplicities[r] << "\n";
  }
  auto check = verify_character_table(s, t);
  if (!check.ok) std::cout << "verification FAILED: " << check.reason << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Schurian association schemes: construction, verification, canonical forms,\n"
               "character tables, 2-closures and database tooling"};
  app.require_subcommand(1);

  std::string matrix_file, matrix_file2, group_file, out_dir = ".", in_file, out_file;
  std::string format = "plain";
  int degree = 0;
  int jobs = 1;
  double tolerance = 1e-9;
  unsigned seed = SpectralConfig{}.seed;

  auto *cmd_verify = app.add_subcommand("verify", "validate a relation matrix and report its properties");
  cmd_verify->add_option("matrix", matrix_file, "relation matrix file (\"n d\" header, then n rows)")->required();
  cmd_verify->add_option("--format", format, "plain or json-like-lines");

  auto *cmd_schurian = app.add_subcommand("schurian", "orbital scheme K(G) of a transitive group");
  cmd_schurian->add_option("group", group_file, "group generator file")->required();

  auto *cmd_aut = app.add_subcommand("aut", "automorphism group of a scheme");
  cmd_aut->add_option("matrix", matrix_file)->required();

  auto *cmd_canon = app.add_subcommand("canon", "canonical form of a scheme");
  cmd_canon->add_option("matrix", matrix_file)->required();

  auto *cmd_iso = app.add_subcommand("iso", "isomorphism between two schemes");
  cmd_iso->add_option("matrix1", matrix_file)->required();
  cmd_iso->add_option("matrix2", matrix_file2)->required();

  auto *cmd_closure = app.add_subcommand("closure", "2-closure of a transitive group");
  cmd_closure->add_option("group", group_file)->required();

  auto *cmd_char = app.add_subcommand("char-table", "character table of a scheme");
  cmd_char->add_option("matrix", matrix_file)->required();
  cmd_char->add_option("--tolerance", tolerance)->envname("SCHURIAN_TOLERANCE");
  cmd_char->add_option("--seed", seed)->envname("SCHURIAN_SEED");

  auto *cmd_classify = app.add_subcommand("classify", "classify Schurian schemes from a list of groups");
  cmd_classify->add_option("--degree", degree, "expected degree of every group")->required();
  cmd_classify->add_option("--groups", group_file, "group blocks, each starting with a degree line")->required();
  cmd_classify->add_option("--out", out_dir, "output directory for SchurianSchemesN / TwoClosuresN");
  cmd_classify->add_option("--jobs", jobs)->envname("SCHURIAN_JOBS");
  cmd_classify->add_option("--tolerance", tolerance)->envname("SCHURIAN_TOLERANCE");
  cmd_classify->add_option("--seed", seed)->envname("SCHURIAN_SEED");

  auto *cmd_census = app.add_subcommand("census", "property census of a scheme database");
  cmd_census->add_option("--in", in_file, "SchurianSchemesN file")->required();
  cmd_census->add_option("--format", format, "plain or json-like-lines");

  auto *cmd_oracle = app.add_subcommand("oracle", "brute-force oracles for fixtures and cross-checks");
  cmd_oracle->require_subcommand(1);
  auto *cmd_otrans = cmd_oracle->add_subcommand("transitive-subgroups",
                                                "transitive subgroup class representatives of S_n");
  cmd_otrans->add_option("--degree", degree)->required();
  cmd_otrans->add_option("--out", out_file, "write group blocks here instead of stdout");
  auto *cmd_oaut = cmd_oracle->add_subcommand("brute-aut", "exhaustive automorphism group (n <= 8)");
  cmd_oaut->add_option("matrix", matrix_file)->required();
  auto *cmd_oiso = cmd_oracle->add_subcommand("brute-iso", "exhaustive isomorphism test (n <= 6)");
  cmd_oiso->add_option("matrix1", matrix_file)->required();
  cmd_oiso->add_option("matrix2", matrix_file2)->required();
  auto *cmd_oclosure = cmd_oracle->add_subcommand("closure", "full element closure of a group");
  cmd_oclosure->add_option("group", group_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_verify) {
      AssociationScheme s = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      std::cout << (format == "json-like-lines" ? property_json(s) : property_summary(s)) << "\n";
    } else if (*cmd_schurian) {
      AssociationScheme s = schurian_scheme(read_group_file(group_file));
      write_relation_matrix(std::cout, s.relation_matrix());
    } else if (*cmd_aut) {
      AssociationScheme s = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      print_group(aut_group(s));
    } else if (*cmd_canon) {
      AssociationScheme s = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      CanonicalForm cf = canonical_form(s);
      write_relation_matrix(std::cout, cf.matrix);
      std::cout << "point map " << format_cycles(cf.point_map) << "\ncolour map";
      for (int c : cf.colour_map) std::cout << " " << c;
      std::cout << "\n";
    } else if (*cmd_iso) {
      AssociationScheme a = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      AssociationScheme b = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file2));
      auto cert = isomorphism(a, b);
      if (!cert) {
        std::cout << "not isomorphic\n";
      } else {
        std::cout << "isomorphic\npoint map " << format_cycles(cert->point_map) << "\nclass map";
        for (int c : cert->class_map) std::cout << " " << c;
        std::cout << "\n";
      }
    } else if (*cmd_closure) {
      PermGroup g = read_group_file(group_file);
      PermGroup closure = two_closure(g);
      print_group(closure);
      std::cout << (closure.order() == g.order() ? "2-closed\n" : "not 2-closed\n");
    } else if (*cmd_char) {
      AssociationScheme s = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      SpectralConfig cfg;
      cfg.tolerance = tolerance;
      cfg.seed = seed;
      CharacterTable t = character_table(s, cfg);
      print_table(s, t);
      if (s.is_symmetric()) {
        KreinParameters kp = krein_parameters(s, t);
        if (kp.min_value < -1e-6)
          std::cerr << "warning: Krein parameter " << kp.min_value << " below zero\n";
      }
    } else if (*cmd_classify) {
      auto groups = read_groups_file(group_file);
      for (const auto &g : groups)
        if (g.degree() != degree)
          throw std::invalid_argument("group of degree " + std::to_string(g.degree()) +
                                      " in a degree-" + std::to_string(degree) + " classification");
      PipelineConfig cfg;
      cfg.jobs = jobs;
      cfg.spectral.tolerance = tolerance;
      cfg.spectral.seed = seed;
      ClassifyResult result = classify(groups, cfg);
      auto closures = closure_table(groups, result, cfg);
      write_database_files(out_dir, degree, result.records, closures);
      std::cout << result.records.size() << " schemes from " << groups.size() << " groups; wrote "
                << out_dir << "/SchurianSchemes" << degree << " and " << out_dir << "/TwoClosures"
                << degree << "\n";
    } else if (*cmd_census) {
      auto records = read_scheme_database_file(in_file);
      std::cout << render_census(run_census(records), format == "json-like-lines");
    } else if (*cmd_otrans) {
      auto groups = oracle::transitive_subgroups(degree);
      std::ostringstream buf;
      for (const auto &g : groups) write_group(buf, g);
      if (out_file.empty()) {
        std::cout << buf.str();
      } else {
        std::ofstream out(out_file);
        if (!out) throw std::invalid_argument("cannot write " + out_file);
        out << buf.str();
      }
      std::cerr << groups.size() << " transitive subgroup classes of S_" << degree << "\n";
    } else if (*cmd_oaut) {
      AssociationScheme s = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      print_group(oracle::brute_aut(s));
    } else if (*cmd_oiso) {
      AssociationScheme a = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file));
      AssociationScheme b = AssociationScheme::from_relation_matrix(read_relation_matrix_file(matrix_file2));
      auto cert = oracle::brute_iso(a, b);
      std::cout << (cert ? "isomorphic\n" : "not isomorphic\n");
    } else if (*cmd_oclosure) {
      PermGroup g = read_group_file(group_file);
      auto elems = oracle::element_closure(g.degree(), g.generators());
      std::cout << elems.size() << " elements\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
