#include "cavity/subset_sum.hpp"

#include <set>
#include <sstream>

#include "cavity/errors.hpp"

namespace cavity {

std::string problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ThreeSat: return "3sat";
    case ProblemKind::VertexCover: return "vertex-cover";
    case ProblemKind::Mis: return "mis";
    case ProblemKind::Clique: return "clique";
    case ProblemKind::Matching: return "matching";
    case ProblemKind::ExactCover: return "exact-cover";
    case ProblemKind::SetPacking: return "set-packing";
    case ProblemKind::Maxcut: return "maxcut";
    case ProblemKind::DominatingSet: return "dominating-set";
    case ProblemKind::ThreeColoring: return "3coloring";
  }
  throw InvariantError("unknown problem kind");
}

ProblemKind problem_from_name(const std::string& name) {
  if (name == "3sat") return ProblemKind::ThreeSat;
  if (name == "vertex-cover") return ProblemKind::VertexCover;
  if (name == "mis") return ProblemKind::Mis;
  if (name == "clique") return ProblemKind::Clique;
  if (name == "matching") return ProblemKind::Matching;
  if (name == "exact-cover") return ProblemKind::ExactCover;
  if (name == "set-packing") return ProblemKind::SetPacking;
  if (name == "maxcut") return ProblemKind::Maxcut;
  if (name == "dominating-set") return ProblemKind::DominatingSet;
  if (name == "3coloring") return ProblemKind::ThreeColoring;
  throw FormatError("unknown problem kind '" + name + "'");
}

bool problem_requires_k(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::ThreeSat:
    case ProblemKind::ExactCover:
    case ProblemKind::ThreeColoring:
      return false;
    default:
      return true;
  }
}

namespace {

const char* role_name(RoleTag::Kind k) {
  switch (k) {
    case RoleTag::Kind::VarTrue: return "VarTrue";
    case RoleTag::Kind::VarFalse: return "VarFalse";
    case RoleTag::Kind::ClauseSlack: return "ClauseSlack";
    case RoleTag::Kind::VertexPick: return "VertexPick";
    case RoleTag::Kind::EdgeSlack: return "EdgeSlack";
    case RoleTag::Kind::EdgePick: return "EdgePick";
    case RoleTag::Kind::PairPick: return "PairPick";
    case RoleTag::Kind::SubsetPick: return "SubsetPick";
    case RoleTag::Kind::ElementUnit: return "ElementUnit";
    case RoleTag::Kind::CutBoth: return "CutBoth";
    case RoleTag::Kind::CutOne: return "CutOne";
    case RoleTag::Kind::DomEdgeBoth: return "DomEdgeBoth";
    case RoleTag::Kind::DomEdgeOne: return "DomEdgeOne";
    case RoleTag::Kind::DomSurplus: return "DomSurplus";
    case RoleTag::Kind::ColorPick: return "ColorPick";
    case RoleTag::Kind::EdgeColorSlack: return "EdgeColorSlack";
  }
  throw InvariantError("unknown role kind");
}

int role_arity(RoleTag::Kind k) {
  switch (k) {
    case RoleTag::Kind::ClauseSlack:
    case RoleTag::Kind::EdgePick:
    case RoleTag::Kind::PairPick:
    case RoleTag::Kind::DomSurplus:
    case RoleTag::Kind::ColorPick:
    case RoleTag::Kind::EdgeColorSlack:
      return 2;
    default:
      return 1;
  }
}

bool role_second_is_color(RoleTag::Kind k) {
  return k == RoleTag::Kind::ColorPick || k == RoleTag::Kind::EdgeColorSlack;
}

const char* color_name(int c) {
  switch (c) {
    case 0: return "red";
    case 1: return "green";
    case 2: return "blue";
  }
  throw InvariantError("color index out of range");
}

} // namespace

std::string RoleTag::to_text() const {
  std::ostringstream os;
  os << role_name(kind) << '(' << a;
  if (role_arity(kind) == 2) {
    os << ',';
    if (role_second_is_color(kind))
      os << color_name(b);
    else
      os << b;
  }
  os << ')';
  return os.str();
}

RoleTag RoleTag::from_text(const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw FormatError("bad role tag '" + text + "'");
  std::string name = text.substr(0, open);
  std::string args = text.substr(open + 1, text.size() - open - 2);
  static const std::vector<RoleTag::Kind> kinds = {
      RoleTag::Kind::VarTrue,     RoleTag::Kind::VarFalse,   RoleTag::Kind::ClauseSlack,
      RoleTag::Kind::VertexPick,  RoleTag::Kind::EdgeSlack,  RoleTag::Kind::EdgePick,
      RoleTag::Kind::PairPick,    RoleTag::Kind::SubsetPick, RoleTag::Kind::ElementUnit,
      RoleTag::Kind::CutBoth,     RoleTag::Kind::CutOne,     RoleTag::Kind::DomEdgeBoth,
      RoleTag::Kind::DomEdgeOne,  RoleTag::Kind::DomSurplus, RoleTag::Kind::ColorPick,
      RoleTag::Kind::EdgeColorSlack};
  RoleTag tag;
  bool found = false;
  for (auto k : kinds) {
    if (name == role_name(k)) {
      tag.kind = k;
      found = true;
      break;
    }
  }
  if (!found) throw FormatError("bad role tag '" + text + "'");
  std::istringstream is(args);
  std::string first, second;
  std::getline(is, first, ',');
  tag.a = std::stoi(first);
  if (role_arity(tag.kind) == 2) {
    std::getline(is, second);
    if (role_second_is_color(tag.kind)) {
      if (second == "red")
        tag.b = 0;
      else if (second == "green")
        tag.b = 1;
      else if (second == "blue")
        tag.b = 2;
      else
        throw FormatError("bad color in role tag '" + text + "'");
    } else {
      tag.b = std::stoi(second);
    }
  }
  return tag;
}

Radical SubsetSumInstance::sum(const std::vector<bool>& chosen) const {
  if (chosen.size() != weights.size())
    throw PreconditionError("subset sum: selection length mismatch");
  Radical s;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (chosen[i]) s += weights[i];
  return s;
}

void SubsetSumInstance::validate() const {
  if (weights.size() != roles.size())
    throw InvariantError("subset-sum instance: weight/role count mismatch");
  if (static_cast<long>(weights.size()) != source.expected_weights)
    throw InvariantError("subset-sum instance: weight count " + std::to_string(weights.size()) +
                         " does not match cost formula " + source.cost_formula + " = " +
                         std::to_string(source.expected_weights));
}

std::vector<SquarefreeRank> SubsetSumInstance::unused_target_ranks() const {
  std::set<SquarefreeRank> used;
  for (const auto& w : weights)
    for (const auto& [p, c] : w.terms()) used.insert(p);
  std::vector<SquarefreeRank> missing;
  for (const auto& [p, c] : target.terms())
    if (!used.count(p)) missing.push_back(p);
  return missing;
}

} // namespace cavity
