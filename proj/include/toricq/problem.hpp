#pragma once

#include "toricq/cone_set.hpp"
#include "toricq/cox.hpp"
#include "toricq/fan.hpp"
#include "toricq/lattice.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricq {

inline constexpr int kProblemFormatVersion = 1;

/// Malformed problem input. `where` is "line L, column C" for syntax errors
/// and a JSON pointer such as "/rays/2/0" for field errors.
class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct SectionFamily {
  std::string selection;  // selection of the fan whose lift the family describes
  std::vector<Section> members;
};

/**
 * Problem file, a JSON document:
 *
 *   {
 *     "format": 1,
 *     "rank": 2,
 *     "rays": [[1, 0], [0, 1], [-1, -1]],
 *     "max_cones": [[0, 1], [1, 2], [0, 2]],
 *     "subtorus": [[1, 1]],
 *     "symmetries": [[[0, -1], [1, -1]]],
 *     "selections": {"chart": {"generated_by": [[0, 1]]}, "torus": {"cones": [[]]}},
 *     "sections": {"f": {"selection": "all", "members": [
 *        {"monomial": [1, 0, 0]},
 *        {"polynomial": [["1/2", [1, 0, 0]], [1, [0, 1, 0]]]}]}}
 *   }
 *
 * Matrices are lists of rows. Cones are lists of ray indices. The names
 * "all" and "empty" are predefined selections.
 */
struct ProblemFile {
  int version = kProblemFormatVersion;
  std::shared_ptr<const Fan> fan;
  std::vector<IntVector> subtorus;
  std::vector<IntMatrix> symmetries;
  std::map<std::string, ConeSet> selections;
  std::map<std::string, SectionFamily> sections;

  /// Throws ProblemError for unknown names.
  const ConeSet& selection(const std::string& name) const;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

}  // namespace toricq
