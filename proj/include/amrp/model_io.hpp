#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "amrp/csv.hpp"
#include "amrp/json_writer.hpp"
#include "amrp/voting.hpp"

namespace amrp {

// One `.amrp-model` bundle: all 12 base models per affectivity target plus
// the voting configuration and seeds. Doubles are stored in shortest
// round-trip form so a reloaded bundle predicts bit-identically.
struct ModelBundle {
  std::array<TrainedEnsemble, 3> per_target;  // like, excitement, feelings
  std::uint64_t seed = 0;
};

constexpr int kModelFormatVersion = 1;

namespace detail {

inline void write_model(JsonWriter& w, const ClassifierModel& m) {
  w.begin_object();
  w.kv("kind", classifier_name(m.kind));
  w.kv("dim", m.feature_dim);
  w.key("seed").value(static_cast<long long>(m.training_seed));
  w.kv("constant", m.constant);
  if (const auto* c = std::get_if<ConstantModel>(&m.impl)) {
    w.kv("label", c->label);
  } else if (const auto* f = std::get_if<ForestModel>(&m.impl)) {
    w.key("trees").begin_array();
    for (const auto& tree : f->trees) {
      w.begin_array();
      for (const auto& node : tree.nodes) {
        w.begin_array();
        w.value(node.feature);
        w.value_exact(node.threshold);
        w.value(node.left);
        w.value(node.right);
        w.value_exact(node.class1_fraction);
        w.end_array();
      }
      w.end_array();
    }
    w.end_array();
  } else if (const auto* s = std::get_if<SvmModel>(&m.impl)) {
    w.key("gamma").value_exact(s->gamma);
    w.key("bias").value_exact(s->bias);
    w.key("mean").begin_array();
    for (double v : s->feature_mean) w.value_exact(v);
    w.end_array();
    w.key("scale").begin_array();
    for (double v : s->feature_scale) w.value_exact(v);
    w.end_array();
    w.key("coef").begin_array();
    for (double v : s->sv_coef) w.value_exact(v);
    w.end_array();
    w.key("sv").begin_array();
    for (const auto& vec : s->sv) {
      w.begin_array();
      for (double v : vec) w.value_exact(v);
      w.end_array();
    }
    w.end_array();
  } else if (const auto* a = std::get_if<AdaBoostModel>(&m.impl)) {
    w.key("stumps").begin_array();
    for (const auto& st : a->stumps) {
      w.begin_array();
      w.value(static_cast<long long>(st.feature));
      w.value_exact(st.threshold);
      w.value(st.polarity);
      w.end_array();
    }
    w.end_array();
    w.key("weights").begin_array();
    for (double v : a->weights) w.value_exact(v);
    w.end_array();
  } else if (const auto* g = std::get_if<GbdtModel>(&m.impl)) {
    w.key("base").value_exact(g->base_score);
    w.key("trees").begin_array();
    for (const auto& tree : g->trees) {
      w.begin_array();
      for (const auto& node : tree.nodes) {
        w.begin_array();
        w.value(node.feature);
        w.value_exact(node.threshold);
        w.value(node.left);
        w.value(node.right);
        w.value_exact(node.value);
        w.end_array();
      }
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();
}

inline ClassifierModel read_model(const nlohmann::json& j) {
  ClassifierModel m;
  m.kind = classifier_from_name(j.at("kind").get<std::string>());
  m.feature_dim = j.at("dim").get<std::size_t>();
  m.training_seed = j.at("seed").get<std::uint64_t>();
  m.constant = j.at("constant").get<bool>();
  if (m.constant) {
    m.impl = ConstantModel{j.at("label").get<int>()};
    return m;
  }
  switch (m.kind) {
    case ClassifierKind::forest: {
      ForestModel f;
      for (const auto& jt : j.at("trees")) {
        DecisionTree t;
        for (const auto& jn : jt) {
          TreeNode n;
          n.feature = jn.at(0).get<int>();
          n.threshold = jn.at(1).get<double>();
          n.left = jn.at(2).get<std::int32_t>();
          n.right = jn.at(3).get<std::int32_t>();
          n.class1_fraction = jn.at(4).get<double>();
          t.nodes.push_back(n);
        }
        f.trees.push_back(std::move(t));
      }
      m.impl = std::move(f);
      break;
    }
    case ClassifierKind::max_margin: {
      SvmModel s;
      s.gamma = j.at("gamma").get<double>();
      s.bias = j.at("bias").get<double>();
      s.feature_mean = j.at("mean").get<std::vector<double>>();
      s.feature_scale = j.at("scale").get<std::vector<double>>();
      s.sv_coef = j.at("coef").get<std::vector<double>>();
      for (const auto& jv : j.at("sv")) s.sv.push_back(jv.get<std::vector<double>>());
      m.impl = std::move(s);
      break;
    }
    case ClassifierKind::adaptive_boost: {
      AdaBoostModel a;
      for (const auto& js : j.at("stumps")) {
        Stump st;
        st.feature = js.at(0).get<std::size_t>();
        st.threshold = js.at(1).get<double>();
        st.polarity = js.at(2).get<int>();
        a.stumps.push_back(st);
      }
      a.weights = j.at("weights").get<std::vector<double>>();
      m.impl = std::move(a);
      break;
    }
    case ClassifierKind::gradient_boost: {
      GbdtModel g;
      g.base_score = j.at("base").get<double>();
      for (const auto& jt : j.at("trees")) {
        BoostTree t;
        for (const auto& jn : jt) {
          BoostNode n;
          n.feature = jn.at(0).get<int>();
          n.threshold = jn.at(1).get<double>();
          n.left = jn.at(2).get<std::int32_t>();
          n.right = jn.at(3).get<std::int32_t>();
          n.value = jn.at(4).get<double>();
          t.nodes.push_back(n);
        }
        g.trees.push_back(std::move(t));
      }
      m.impl = std::move(g);
      break;
    }
  }
  return m;
}

}  // namespace detail

inline std::string bundle_to_json(const ModelBundle& bundle) {
  JsonWriter w;
  w.begin_object();
  w.kv("format", "amrp-model");
  w.kv("version", kModelFormatVersion);
  w.key("seed").value(static_cast<long long>(bundle.seed));
  w.key("voting").begin_object();
  w.kv("level1", "majority of 4 families per method");
  w.kv("level2", "majority of 3 method verdicts");
  w.kv("tie_rule", "higher mean confidence, then label 0");
  w.end_object();
  w.key("targets").begin_array();
  for (const auto& ens : bundle.per_target) {
    w.begin_object();
    w.kv("target", ens.target);
    w.key("seed").value(static_cast<long long>(ens.seed));
    w.key("methods").begin_array();
    for (std::size_t m = 0; m < kFeatureMethodCount; ++m) {
      w.begin_object();
      w.kv("method", method_name(static_cast<FeatureMethod>(m)));
      w.key("models").begin_array();
      for (std::size_t k = 0; k < kClassifierKindCount; ++k)
        detail::write_model(w, ens.models[m][k]);
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

inline void save_bundle(const ModelBundle& bundle, const std::string& path) {
  write_text(path, bundle_to_json(bundle));
}

inline ModelBundle load_bundle(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("model bundle: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "amrp-model")
      fail(Errc::parse_error, "not an amrp-model file");
    if (j.at("version").get<int>() != kModelFormatVersion)
      fail(Errc::parse_error, "unsupported model format version");
    ModelBundle bundle;
    bundle.seed = j.at("seed").get<std::uint64_t>();
    const auto& targets = j.at("targets");
    if (targets.size() != 3) fail(Errc::parse_error, "bundle must hold three targets");
    for (std::size_t t = 0; t < 3; ++t) {
      auto& ens = bundle.per_target[t];
      ens.target = targets[t].at("target").get<std::string>();
      ens.seed = targets[t].at("seed").get<std::uint64_t>();
      const auto& methods = targets[t].at("methods");
      for (std::size_t m = 0; m < kFeatureMethodCount; ++m) {
        const auto& models = methods[m].at("models");
        for (std::size_t k = 0; k < kClassifierKindCount; ++k)
          ens.models[m][k] = detail::read_model(models[k]);
      }
    }
    return bundle;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("model bundle: ") + e.what());
  }
}

}  // namespace amrp
