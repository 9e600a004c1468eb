#pragma once

// Command implementations behind the qac executable. Each returns the exit
// status and the exact text to print, so the tools binary only parses flags
// and the tests can run commands in-process.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qac/automata.hpp"

namespace qac::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, text, dot };

struct CommandResult {
  int status = 0;
  std::string output;
};

/// {conductor, coeffs: ["num/den", ...]}
Json to_json(const CycNum& c);
/// {dim, conductor, rows: [[CycNum...]...], text}
Json to_json(const Matrix& m);
/// {coords: [...], label}
Json to_json(const ProjPoint& p);
/// The certificate object: word, pair, orbit_size, unique, matrices,
/// orbit_labels, search_space_exhausted plus the check details.
Json certificate(const std::string& word, const ComplexityPair& pair, const QuantumDFA& m, const UniqueCheck& check,
                 bool search_space_exhausted);

/// "key: value" lines; nested objects indent by two spaces.
std::string render_text(const Json& j);

/// "1,2" or "1/2,-3" -> a rational 2-vector.
RationalVector2 parse_vector(const std::string& text);
/// Positive decimal such as "1e-8" or "0.001"; throws Error otherwise.
double parse_tolerance(const std::string& text);
/// QAC_WORKERS, when set to a positive integer, overrides the flag value.
std::size_t resolve_workers(std::size_t flag_value);

/// The printed 0011 unitaries over Q(i).
Matrix printed_u0();
Matrix printed_u1();
/// The twelve figure labels of the 0011 orbit.
const std::vector<std::string>& figure_labels();

struct VerifyOptions {
  std::size_t orbit_cap = kDefaultOrbitCap;
  std::optional<RationalVector2> v;  ///< rerun the recipe at this vector
  OutputFormat format = OutputFormat::json;
};
CommandResult verify_0011(const VerifyOptions& opt);

struct ApermCommand {
  std::string word;
  std::optional<std::uint32_t> q_max;  ///< default |word| + 1
  std::optional<double> budget_seconds;
  ApermFrontier resume;
  std::size_t workers = 1;
  OutputFormat format = OutputFormat::json;
};
CommandResult aperm(const ApermCommand& cmd);

struct SearchCommand {
  std::string word;  ///< expand_word syntax
  std::size_t order_max = 12;
  int v_height = 3;
  std::vector<std::string> families;  ///< empty: cyclic, binary_dihedral, polyhedral
  std::size_t orbit_cap = kDefaultOrbitCap;
  std::size_t workers = 1;
  OutputFormat format = OutputFormat::json;
};
CommandResult search(const SearchCommand& cmd);

struct CollideCommand {
  std::string group;
  bool projective = false;
  std::optional<std::size_t> m;
  OutputFormat format = OutputFormat::json;
};
CommandResult collide(const CollideCommand& cmd);

struct ExportCommand {
  std::string target;  ///< "witness" or a catalog group name
  bool projective = false;
  std::optional<RationalVector2> v;  ///< witness only; default is the printed pair
};
CommandResult export_dot(const ExportCommand& cmd);

struct FloatCheckCommand {
  std::vector<std::string> words;
  std::size_t trials = 100;
  std::string tol = "1e-8";
  std::uint64_t seed = 1;
  bool force_equal = false;
  OutputFormat format = OutputFormat::json;
};
CommandResult float_check(const FloatCheckCommand& cmd);

struct GroupCommand {
  std::string group;
  bool projective = false;
  OutputFormat format = OutputFormat::json;
};
CommandResult group_summary(const GroupCommand& cmd);

}  // namespace qac::cli
