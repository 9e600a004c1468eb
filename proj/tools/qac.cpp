// qac: exact verification and search for quantum automatic complexity witnesses.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qac/cli.hpp"
#include "qac/error.hpp"

namespace {

using qac::cli::OutputFormat;

const std::map<std::string, OutputFormat> kFormats{{"json", OutputFormat::json}, {"text", OutputFormat::text}};

std::optional<qac::RationalVector2> vector_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return qac::cli::parse_vector(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact witnesses for quantum automatic complexity"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t workers = 1;
  OutputFormat format = OutputFormat::json;
  app.add_option("--workers", workers, "Worker threads for searches (QAC_WORKERS overrides)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "json or text")->transform(CLI::CheckedTransformer(kFormats));

  std::size_t orbit_cap = qac::kDefaultOrbitCap;
  std::string v_text;
  auto* verify = app.add_subcommand("verify-0011", "Certify the printed 0011 witness");
  verify->add_option("--orbit-cap", orbit_cap, "Orbit size before falling back to brute force")
      ->check(CLI::PositiveNumber);
  verify->add_option("--v", v_text, "Rerun the conjugation recipe at this vector, e.g. 1,0");

  qac::cli::ApermCommand ap;
  std::string resume;
  double budget = 0;
  std::uint32_t q_max = 0;
  auto* aperm = app.add_subcommand("aperm", "Permutation automatic complexity by exhaustive search");
  aperm->add_option("word", ap.word, "Binary word, e.g. 0011 or 0^3 1")->required();
  aperm->add_option("--q-max", q_max, "Largest state count to try (default |word|+1)")->check(CLI::PositiveNumber);
  aperm->add_option("--budget", budget, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  aperm->add_option("--resume", resume, "Frontier Q:T from an earlier budgeted run");

  qac::cli::SearchCommand sc;
  std::string families;
  auto* search = app.add_subcommand("search", "Scan catalog groups for a semi-classical finite witness");
  search->add_option("word", sc.word, "Binary word, e.g. 0011 or \"0^120\"")->required();
  search->add_option("--order-max", sc.order_max, "Largest projective group order")->check(CLI::PositiveNumber);
  search->add_option("--v-height", sc.v_height, "Height bound for conjugation vectors")->check(CLI::PositiveNumber);
  search->add_option("--families", families, "Comma list of cyclic, binary_dihedral, polyhedral");
  search->add_option("--orbit-cap", sc.orbit_cap, "Orbit cap for the exact re-check")->check(CLI::PositiveNumber);

  qac::cli::CollideCommand co;
  auto* collide = app.add_subcommand("collide", "Commuting exponent and the 0^m 1^m collision");
  collide->add_option("group", co.group, "Catalog group, e.g. 2T or cyclic:7")->required();
  collide->add_flag("--projective", co.projective, "Use the image in PU(2)");
  std::size_t m = 0;
  collide->add_option("--m", m, "Exponent to test (default: the commuting exponent)")->check(CLI::PositiveNumber);

  qac::cli::ExportCommand ex;
  std::string ex_v;
  auto* exp = app.add_subcommand("export", "DOT export of the witness orbit or a Cayley graph");
  exp->add_option("target", ex.target, "\"witness\" or a catalog group")->required();
  exp->add_flag("--projective", ex.projective, "Cayley graph of the image in PU(2)");
  exp->add_option("--v", ex_v, "Witness built by the recipe at this vector");

  qac::cli::FloatCheckCommand fc;
  auto* fl = app.add_subcommand("float-check", "Haar-random unitary pairs in floating point");
  fl->add_option("--word", fc.words, "Word to test (repeatable, default 01)");
  fl->add_option("--trials", fc.trials, "Samples per word")->check(CLI::PositiveNumber);
  fl->add_option("--tol", fc.tol, "Fubini-Study tolerance");
  fl->add_option("--seed", fc.seed, "RNG seed");
  fl->add_flag("--force-equal", fc.force_equal, "Use the same unitary for both letters");

  qac::cli::GroupCommand gc;
  auto* grp = app.add_subcommand("group", "Summary of a catalog group");
  grp->add_option("name", gc.group, "Catalog group")->required();
  grp->add_flag("--projective", gc.projective, "Use the image in PU(2)");

  CLI11_PARSE(app, argc, argv);
  workers = qac::cli::resolve_workers(workers);

  try {
    qac::cli::CommandResult r;
    if (*verify) {
      r = qac::cli::verify_0011({orbit_cap, vector_flag(v_text), format});
    } else if (*aperm) {
      ap.workers = workers;
      ap.format = format;
      if (q_max > 0) ap.q_max = q_max;
      if (budget > 0) ap.budget_seconds = budget;
      if (!resume.empty()) {
        const auto colon = resume.find(':');
        if (colon == std::string::npos) throw qac::Error("--resume expects Q:T");
        ap.resume.q = static_cast<std::uint32_t>(std::stoul(resume.substr(0, colon)));
        ap.resume.type_index = static_cast<std::uint32_t>(std::stoul(resume.substr(colon + 1)));
      }
      r = qac::cli::aperm(ap);
    } else if (*search) {
      sc.workers = workers;
      sc.format = format;
      for (std::size_t pos = 0; pos < families.size();) {
        const auto comma = families.find(',', pos);
        const auto end = comma == std::string::npos ? families.size() : comma;
        if (end > pos) sc.families.push_back(families.substr(pos, end - pos));
        pos = end + 1;
      }
      r = qac::cli::search(sc);
    } else if (*collide) {
      co.format = format;
      if (m > 0) co.m = m;
      r = qac::cli::collide(co);
    } else if (*exp) {
      ex.v = vector_flag(ex_v);
      r = qac::cli::export_dot(ex);
    } else if (*fl) {
      fc.format = format;
      r = qac::cli::float_check(fc);
    } else if (*grp) {
      gc.format = format;
      r = qac::cli::group_summary(gc);
    }
    std::cout << r.output;
    return r.status;
  } catch (const qac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
