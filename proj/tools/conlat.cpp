// Command line front end: evaluate construction expressions, compute
// congruences, enumerate lattices, run the census and the verification
// suite. Exit codes: 0 success, 1 verification failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "conlat/census.hpp"
#include "conlat/congruence.hpp"
#include "conlat/construct.hpp"
#include "conlat/enumerate.hpp"

namespace {

// Expressions normally go through the parser; an argument of the form
// @file.json loads a lattice document instead.
conlat::Lattice load_lattice(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw conlat::LatticeError("cannot open " + arg.substr(1));
    nlohmann::json doc = nlohmann::json::parse(in);
    return conlat::lattice_from_json(doc);
  }
  return conlat::build(arg);
}

void print_lattice_summary(const conlat::Lattice& lat) {
  std::cout << "elements: " << lat.size() << "\n";
  std::cout << "covers:";
  for (auto [a, b] : lat.covers()) std::cout << " (" << a << "," << b << ")";
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite lattice congruence toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for census and enumeration (0 = auto)");

  std::string eval_expr;
  bool eval_dot = false, eval_json = false;
  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate an expression");
  cmd_eval->add_option("expr", eval_expr, "expression or @file.json")
      ->required();
  cmd_eval->add_flag("--dot", eval_dot, "emit the Hasse diagram in DOT");
  cmd_eval->add_flag("--json", eval_json, "emit the lattice as JSON");

  std::string con_expr;
  bool con_count = false, con_list = false, con_lattice = false;
  bool con_dot = false, con_json = false;
  CLI::App* cmd_con = app.add_subcommand("con", "congruences of a lattice");
  cmd_con->add_option("expr", con_expr, "expression or @file.json")
      ->required();
  cmd_con->add_flag("--count", con_count, "print only the number");
  cmd_con->add_flag("--list", con_list, "print every congruence");
  cmd_con->add_flag("--lattice", con_lattice,
                    "print the congruence lattice itself");
  cmd_con->add_flag("--dot", con_dot, "with --lattice, emit DOT");
  cmd_con->add_flag("--json", con_json, "emit JSON");

  int enum_n = 0;
  std::string enum_out;
  CLI::App* cmd_enum =
      app.add_subcommand("enumerate", "all n-element lattices, one per class");
  cmd_enum->add_option("n", enum_n, "element count")->required();
  cmd_enum->add_option("--out", enum_out, "write JSONL here instead of stdout");

  int census_n = 0;
  bool census_json = false, census_csv = false;
  CLI::App* cmd_census =
      app.add_subcommand("census", "congruence-count histogram for size n");
  cmd_census->add_option("n", census_n, "element count")->required();
  cmd_census->add_flag("--json", census_json, "JSON output");
  cmd_census->add_flag("--csv", census_csv, "CSV output");

  int verify_max_n = 7;
  bool verify_json = false;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run the verification suite");
  cmd_verify->add_option("--max-n", verify_max_n,
                         "largest lattice size to enumerate");
  cmd_verify->add_flag("--json", verify_json, "JSON report");

  uint64_t cfi_k = 0;
  int cfi_n = 0;
  bool cfi_exhaustive = false, cfi_construct = false;
  CLI::App* cmd_cfi = app.add_subcommand(
      "cfi", "witnesses with k congruences among n-element lattices");
  cmd_cfi->add_option("k", cfi_k, "congruence count")->required();
  cmd_cfi->add_option("n", cfi_n, "element count")->required();
  cmd_cfi->add_flag("--exhaustive", cfi_exhaustive,
                    "scan the full census (default)");
  cmd_cfi->add_flag("--construct", cfi_construct,
                    "evaluate the fixed recipe table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_eval->parsed()) {
      conlat::Lattice lat = load_lattice(eval_expr);
      if (eval_dot) {
        std::cout << conlat::lattice_to_dot(lat);
      } else if (eval_json) {
        nlohmann::json doc = conlat::lattice_to_json(lat);
        doc["format"] = 1;
        std::cout << doc.dump() << "\n";
      } else {
        print_lattice_summary(lat);
      }
      return 0;
    }

    if (cmd_con->parsed()) {
      conlat::Lattice lat = load_lattice(con_expr);
      if (con_lattice) {
        auto [con_lat, elements] = conlat::congruence_lattice(lat);
        if (con_dot) {
          std::vector<std::string> names;
          names.reserve(elements.size());
          for (const conlat::Congruence& c : elements)
            names.push_back(c.to_string());
          std::cout << conlat::lattice_to_dot(con_lat.with_names(names));
        } else if (con_json) {
          nlohmann::json doc = conlat::lattice_to_json(con_lat);
          doc["format"] = 1;
          std::cout << doc.dump() << "\n";
        } else {
          print_lattice_summary(con_lat);
        }
      } else if (con_list) {
        for (const conlat::Congruence& c : conlat::all_congruences(lat))
          std::cout << c.to_string() << "\n";
      } else {
        // --count is the default
        (void)con_count;
        std::cout << conlat::count_congruences(lat) << "\n";
      }
      return 0;
    }

    if (cmd_enum->parsed()) {
      const auto& lats = conlat::enumerate_lattices(enum_n);
      const auto& codes = conlat::enumerate_codes(enum_n);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!enum_out.empty()) {
        file.open(enum_out);
        if (!file) throw conlat::LatticeError("cannot write " + enum_out);
        out = &file;
      }
      for (size_t i = 0; i < lats.size(); ++i) {
        nlohmann::json doc = conlat::lattice_to_json(lats[i]);
        doc["format"] = 1;
        doc["code"] = codes[i].hex();
        *out << doc.dump() << "\n";
      }
      return 0;
    }

    if (cmd_census->parsed()) {
      conlat::CensusRecord record = conlat::census(census_n, threads);
      if (census_csv) {
        std::cout << record.to_csv();
      } else if (census_json) {
        std::cout << record.to_json().dump() << "\n";
      } else {
        std::cout << "n=" << record.n << " classes=" << record.total << "\n";
        for (const auto& [k, count] : record.histogram)
          std::cout << "  |Con|=" << k << ": " << count << "\n";
      }
      return 0;
    }

    if (cmd_verify->parsed()) {
      conlat::VerificationReport report =
          conlat::verify_paper(verify_max_n, threads);
      if (verify_json)
        std::cout << report.to_json().dump() << "\n";
      else
        std::cout << report.to_text();
      return report.all_passed() ? 0 : 1;
    }

    if (cmd_cfi->parsed()) {
      conlat::CfiMode mode = cfi_construct ? conlat::CfiMode::Construct
                                           : conlat::CfiMode::Exhaustive;
      std::vector<conlat::Lattice> witnesses =
          conlat::cfi_check(cfi_k, cfi_n, mode, threads);
      if (witnesses.empty()) {
        if (mode == conlat::CfiMode::Construct)
          std::cout << "no recipe for (" << cfi_k << "," << cfi_n << ","
                    << cfi_n << ")\n";
        else
          std::cout << "(" << cfi_k << "," << cfi_n << "," << cfi_n
                    << ") is not representable\n";
      } else {
        std::cout << "(" << cfi_k << "," << cfi_n << "," << cfi_n
                  << ") is representable: " << witnesses.size()
                  << (witnesses.size() == 1 ? " witness" : " witnesses")
                  << "\n";
        size_t shown = 0;
        for (const conlat::Lattice& lat : witnesses) {
          if (shown++ == 8) {
            std::cout << "  ...\n";
            break;
          }
          std::cout << "  " << conlat::canonical_code(lat).hex() << "\n";
        }
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
