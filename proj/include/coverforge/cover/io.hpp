#pragma once

// Loading and validating model files.

#include <fstream>
#include <sstream>
#include <string>

#include "coverforge/cover/model.hpp"
#include "coverforge/cover/sampling.hpp"

namespace coverforge::cover {

struct ValidationOptions {
  std::uint32_t prime = 43;  // used for models over QQ or QQ(w)
  int root_index = 0;        // which square root of -7 the prime uses
  std::size_t points = 5;
  std::uint64_t seed = 1;
};

inline alg::ModularEmbedding embedding_for(const VarietyModel& m, const ValidationOptions& opts) {
  if (auto p = model_prime(m)) {
    alg::ModularEmbedding e{PrimeField(p), 0, {}, {}};
    return e;
  }
  if (std::holds_alternative<alg::PolySystem<alg::QuadraticField>>(m.system))
    return alg::ModularEmbedding::standard(opts.prime, opts.root_index);
  alg::ModularEmbedding e{PrimeField(opts.prime), 0, {}, {}};
  return e;
}

/// Checks homogeneity, computes the dimension, and spot-checks that every
/// declared action maps sampled points of the model back onto it.
inline void validate_model(VarietyModel& m, const ValidationOptions& opts = {}) {
  std::visit(
      [&](const auto& s) {
        for (std::size_t i = 0; i < s.polys.size(); ++i)
          if (!s.polys[i].is_homogeneous())
            throw CoverError("model '" + m.name + "': generator " + std::to_string(i + 1) + " is not homogeneous");
      },
      m.system);
  for (const auto& g : m.actions.gens)
    if (g.size() != m.nvars())
      throw CoverError("action '" + g.name + "' has " + std::to_string(g.size()) + " images for " +
                       std::to_string(m.nvars()) + " coordinates");
  auto fp = reduce_model(m, embedding_for(m, opts));
  m.dimension = model_dimension(fp);
  if (m.dimension < 0) throw CoverError("model '" + m.name + "' is empty mod " + std::to_string(fp.field.p));
  if (m.actions.gens.empty()) return;
  SampleOptions so;
  so.seed = opts.seed;
  so.dimension = m.dimension;
  auto pts = sample_points(fp, opts.points, so);
  for (const auto& g : m.actions.gens)
    for (const auto& p : pts.points)
      if (!on_model(fp.ideal, act_on_point(g, fp.field, p)))
        throw CoverError("model '" + m.name + "' is not stable under action '" + g.name +
                         "': a sampled point maps off the model (checked over " + fp.field.name() + ")");
}

inline VarietyModel load_model_file(const std::string& path, const ValidationOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw CoverError("cannot open model file '" + path + "'");
  auto m = parse_model(in);
  validate_model(m, opts);
  return m;
}

inline void save_model_file(const VarietyModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CoverError("cannot write model file '" + path + "'");
  out << format_model(m);
}

}  // namespace coverforge::cover
