#pragma once

#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "soco/adversarial.hpp"
#include "soco/bounds.hpp"
#include "soco/report.hpp"

namespace soco {

using json = nlohmann::json;

/// An instance on any supported space together with optional advice.
/// Layout documented in docs/instance-schema.md.
template <DecisionSpace S>
struct Episode {
  Instance<S> instance;
  std::optional<PredictionSeq<typename S::point_type>> predictions;
};
using AnyEpisode = std::variant<Episode<DiscreteSpace>, Episode<RealLine>, Episode<Plane>>;

/// Throws ConfigError with a JSON-path-like location on malformed input.
AnyEpisode episode_from_json(const json& j);
AnyEpisode load_episode(const std::string& path);

json to_json(const Instance<DiscreteSpace>& inst);
json to_json(const Instance<RealLine>& inst);
json to_json(const Instance<Plane>& inst);
json to_json(const AnyEpisode& ep);

/// +∞ and NaN become null; every other value is written as is.
json number(double v);

json to_json(const DualCertificate& c);
json to_json(const PrimalCertificate& c);
json to_json(const BoundReport& b);
json to_json(const GameTranscript& t);
json to_json(const EpisodeReport& r);

}  // namespace soco
