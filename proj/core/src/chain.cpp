#include "backforth/chain.hpp"

#include "backforth/errors.hpp"

namespace bf {

void validate_chain(const ChainDiagram& c) {
  if (c.objects.empty()) throw InvalidArgument("chain '" + c.name + "' has no objects");
  if (c.maps.size() + 1 != c.objects.size()) {
    throw InvalidArgument("chain '" + c.name + "' has " + std::to_string(c.maps.size()) +
                          " maps for " + std::to_string(c.objects.size()) + " objects");
  }
  for (std::size_t i = 0; i < c.maps.size(); ++i) {
    if (!same_structure(*c.maps[i].src, *c.objects[i]) ||
        !same_structure(*c.maps[i].dst, *c.objects[i + 1])) {
      throw InvalidArgument("chain '" + c.name + "': map " + std::to_string(i) +
                            " does not connect consecutive objects");
    }
    if (classify_morphism(c.maps[i]) < MorphClass::MonoHom) {
      throw InvalidArgument("chain '" + c.name + "': connecting map " + std::to_string(i) +
                            " is not a monomorphism");
    }
  }
}

ChainColimit colimit_of_chain(const ChainDiagram& c, CategoryMode mode) {
  validate_chain(c);
  for (std::size_t i = 0; i < c.maps.size(); ++i) {
    if (!is_mode_mono(c.maps[i], mode)) {
      throw InvalidArgument("chain '" + c.name + "': connecting map " + std::to_string(i) +
                            " is not a monomorphism of the mode");
    }
  }
  ChainColimit out;
  out.object = c.objects.back();
  std::vector<Morphism> into(c.objects.size());
  into[c.objects.size() - 1] = identity_morphism(out.object);
  for (std::size_t i = c.objects.size() - 1; i-- > 0;) {
    into[i] = compose(into[i + 1], c.maps[i]);
  }
  out.cocone = std::move(into);
  return out;
}

bool verify_colimit_universal(const ChainDiagram& c, const ChainColimit& col,
                              const StructureRef& e, const std::vector<Morphism>& legs) {
  if (legs.size() != c.objects.size()) return false;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (!same_structure(*legs[i].src, *c.objects[i]) || !same_structure(*legs[i].dst, *e)) {
      return false;
    }
  }
  // A cocone must commute over the chain.
  for (std::size_t i = 0; i + 1 < legs.size(); ++i) {
    if (!same_morphism(compose(legs[i + 1], c.maps[i]), legs[i])) return false;
  }
  // The induced map is forced to be the last leg; it must factor every leg.
  const Morphism& induced = legs.back();
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (!same_morphism(compose(induced, col.cocone[i]), legs[i])) return false;
  }
  return true;
}

namespace {

bool chain_embeds(const ChainDiagram& c, CategoryMode mode, const Caps& caps,
                  std::string* detail) {
  for (std::size_t i = 0; i < c.maps.size(); ++i) {
    if (!is_mode_morphism(c.maps[i], mode) ||
        !decide_lambda_embedding(c.maps[i], mode, caps)) {
      if (detail) {
        *detail = "connecting map " + std::to_string(i) + " of '" + c.name +
                  "' is not a lambda-embedding";
      }
      return false;
    }
  }
  return true;
}

}  // namespace

LadderReport verify_ladder(const LadderInstance& l, CategoryMode mode, const Caps& caps) {
  validate_chain(l.first);
  validate_chain(l.second);
  if (l.first.objects.size() != l.second.objects.size()) {
    throw InvalidArgument("ladder '" + l.name + "': chains have different lengths");
  }
  if (l.components.size() != l.first.objects.size()) {
    throw InvalidArgument("ladder '" + l.name + "': one component per index required");
  }
  for (std::size_t i = 0; i < l.components.size(); ++i) {
    if (!same_structure(*l.components[i].src, *l.first.objects[i]) ||
        !same_structure(*l.components[i].dst, *l.second.objects[i])) {
      throw InvalidArgument("ladder '" + l.name + "': component " + std::to_string(i) +
                            " does not connect the chains");
    }
  }
  // Naturality squares must commute before anything is claimed.
  for (std::size_t i = 0; i + 1 < l.components.size(); ++i) {
    if (!same_morphism(compose(l.components[i + 1], l.first.maps[i]),
                       compose(l.second.maps[i], l.components[i]))) {
      throw InvalidArgument("ladder '" + l.name + "': naturality square " + std::to_string(i) +
                            " does not commute");
    }
  }

  LadderReport report;
  std::string detail;
  if (!chain_embeds(l.first, mode, caps, &detail) ||
      !chain_embeds(l.second, mode, caps, &detail)) {
    report.hypothesis_ok = false;
    report.detail = detail;
    return report;
  }
  for (std::size_t i = 0; i < l.components.size(); ++i) {
    if (!is_mode_morphism(l.components[i], mode) ||
        !decide_lambda_embedding(l.components[i], mode, caps)) {
      report.hypothesis_ok = false;
      report.detail = "component " + std::to_string(i) + " is not a lambda-embedding";
      return report;
    }
  }
  report.hypothesis_ok = true;
  // Finite chains: the induced colimit map is the last component.
  report.conclusion_ok = decide_lambda_embedding(l.components.back(), mode, caps);
  return report;
}

SmoothReport verify_smooth_composition(const ChainDiagram& c, CategoryMode mode,
                                       const Caps& caps) {
  validate_chain(c);
  SmoothReport report;
  std::string detail;
  if (!chain_embeds(c, mode, caps, &detail)) {
    report.hypothesis_ok = false;
    report.detail = detail;
    return report;
  }
  report.hypothesis_ok = true;
  ChainColimit col = colimit_of_chain(c, mode);
  report.composite_ok = decide_lambda_embedding(col.cocone.front(), mode, caps);
  return report;
}

}  // namespace bf
