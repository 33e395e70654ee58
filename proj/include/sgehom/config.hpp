////////////////////////////////////////////////////////////////////////////////
// config.hpp
////////////////////////////////////////////////////////////////////////////////
// Job configuration: a versioned JSON document selecting a model, the RVE and
// inclusion geometry, phase moduli and flags. Parsing validates the whole
// document and reports every violation, not just the first.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "sgehom/errors.hpp"
#include "sgehom/geometry.hpp"
#include "sgehom/tensor_core.hpp"

namespace sgehom {

using json = nlohmann::ordered_json;

enum class ModelKind {
    Generic,
    RectCircle,
    BoxSphere,
    SquareEllipse,
    SquareCrack,
    ExplicitCtilde,
    FromEffective,
};

std::string to_string(ModelKind m);

struct Tolerances {
    double dilute_threshold = kDefaultDiluteThreshold;
    double classify = kClassifyTol;
    double fit_certify = 1e-10;
};

struct CrackSpec {
    double b1;
};

struct JobConfig {
    json echo;  // the parsed document, field order preserved
    int dimension = 2;
    ModelKind model = ModelKind::Generic;
    std::optional<Shape> rve;
    std::optional<Shape> inclusion;
    InclusionMaterial inclusion_material = VoidPhase{};
    std::optional<Material> matrix;
    std::optional<double> f;
    std::optional<CrackSpec> crack;
    std::optional<ElasticTensor> ctilde;     // explicit_ctilde provenance
    std::optional<ElasticTensor> effective;  // from_effective provenance
    bool erratum_sign_3d = false;
    std::uint64_t seed = 20240101;
    Tolerances tol;
};

// Both throw ConfigError carrying the full violation list.
JobConfig parse_config_json(const json &doc);
JobConfig parse_config(const std::string &path);

// Lame parameters from any of the accepted modulus pairs; conversions are
// plane strain in 2D (nu = lambda / (2 (lambda + mu))).
Material material_from_json(const json &spec, int dim);

}  // namespace sgehom
