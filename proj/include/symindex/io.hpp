#pragma once

// File-format layer: JSON matrices (arrays of rows), JSON report fragments,
// TOML-to-domain readers for profiles and surfaces, CSV tables, atomic writes.

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "symindex/iter_engine.hpp"
#include "symindex/morse_ledger.hpp"
#include "symindex/orbit_lab.hpp"
#include "symindex/rational.hpp"
#include "symindex/sp_core.hpp"
#include "symindex/toml_lite.hpp"

namespace symindex::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Matrices and spectra
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix JSON must be a non-empty array of rows");
    const size_t rows = j.size();
    const size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw ValidationError("matrix JSON rows must be arrays of numbers");
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ValidationError("matrix JSON has ragged rows");
        for (size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json spectrum_to_json(const std::vector<Complex>& ev) {
    json out = json::array();
    for (const auto& z : ev) out.push_back(complex_to_json(z));
    return out;
}

inline json rational_to_json(const Rational& r) {
    return json{{"num", r.numerator()}, {"den", r.denominator()}, {"value", to_double(r)}};
}

// ---------------------------------------------------------------------------
// Blocks, decompositions, profiles
// ---------------------------------------------------------------------------

inline json block_to_json(const BlockLabel& b) {
    json j;
    switch (b.kind) {
        case BlockLabel::Kind::N1:
            j["kind"] = "N1";
            j["eig"] = b.eig;
            j["b"] = b.b;
            break;
        case BlockLabel::Kind::Rotation:
            j["kind"] = "R";
            j["theta"] = b.theta; // radians
            break;
        case BlockLabel::Kind::HyperbolicPair:
            j["kind"] = "hyp";
            j["lambda"] = b.lambda;
            break;
        case BlockLabel::Kind::ComplexQuadruple:
            j["kind"] = "quad";
            j["re"] = b.lambda_c.real();
            j["im"] = b.lambda_c.imag();
            break;
    }
    return j;
}

inline json decomposition_to_json(const BlockDecomposition& d) {
    json j;
    j["blocks"] = json::array();
    for (const auto& b : d.blocks) j["blocks"].push_back(block_to_json(b));
    j["accounted_dim"] = d.accounted_dim;
    j["residual_report"] = d.residual_text();
    return j;
}

inline json profile_to_json(const MonodromyProfile& p) {
    json j;
    j["i1"] = p.i1;
    j["n"] = p.n;
    j["family"] = family_name(p.family);
    j["blocks"] = json::array();
    for (const auto& b : p.blocks) {
        json bj = block_to_json(b.label);
        if (b.rational) bj["rational"] = json::array({b.num, b.den});
        j["blocks"].push_back(std::move(bj));
    }
    return j;
}

inline ProfileBlock profile_block_from_toml(const toml::Value& t) {
    const std::string kind = t.at("kind").as_string();
    if (kind == "R") {
        t.check_keys({"kind", "theta_over_2pi", "rational"}, "rotation block");
        if (t.has("rational")) {
            const auto& arr = t.at("rational").array();
            if (arr.size() != 2)
                throw ValidationError("rotation block: rational must be [L, N]");
            auto b = ProfileBlock::rational_rotation(arr[0].as_integer(), arr[1].as_integer());
            if (t.has("theta_over_2pi")) {
                const double declared = t.at("theta_over_2pi").as_double();
                const double exact = static_cast<double>(b.num) / static_cast<double>(b.den);
                if (std::abs(declared - exact) > 1e-9)
                    throw ValidationError("rotation block: theta_over_2pi disagrees with the rational declaration");
            }
            return b;
        }
        const double t2p = t.at("theta_over_2pi").as_double();
        if (!(t2p > 0.0 && t2p < 1.0))
            throw ValidationError("rotation block: theta_over_2pi must lie in (0, 1)");
        return ProfileBlock::of(BlockLabel::rotation(kTwoPi * t2p));
    }
    if (kind == "N1") {
        t.check_keys({"kind", "eig", "b"}, "N1 block");
        return ProfileBlock::of(BlockLabel::n1(static_cast<int>(t.at("eig").as_integer()),
                                               static_cast<int>(t.at("b").as_integer())));
    }
    if (kind == "hyp") {
        t.check_keys({"kind", "lambda"}, "hyperbolic block");
        return ProfileBlock::of(BlockLabel::hyperbolic(t.at("lambda").as_double()));
    }
    if (kind == "quad") {
        t.check_keys({"kind", "re", "im"}, "quadruple block");
        return ProfileBlock::of(
            BlockLabel::quadruple(Complex(t.at("re").as_double(), t.at("im").as_double())));
    }
    throw ValidationError("unknown block kind '" + kind + "'");
}

inline MonodromyProfile profile_from_toml(const toml::Value& t) {
    t.check_keys({"i1", "n", "family", "blocks"}, "profile");
    MonodromyProfile p;
    p.i1 = static_cast<int>(t.at("i1").as_integer());
    p.family = family_from_name(t.at("family").as_string());
    int dims = 0;
    for (const auto& b : t.at("blocks").array()) {
        p.blocks.push_back(profile_block_from_toml(b));
        dims += p.blocks.back().label.dim();
    }
    p.n = t.has("n") ? static_cast<int>(t.at("n").as_integer()) : dims / 2;
    validate_profile(p);
    return p;
}

// ---------------------------------------------------------------------------
// Surfaces
// ---------------------------------------------------------------------------

inline ConvexSurface surface_from_toml(const toml::Value& t) {
    const std::string kind = t.at("kind").as_string();
    std::vector<double> radii;
    for (const auto& r : t.at("radii").array()) radii.push_back(r.as_double());
    if (kind == "ellipsoid") {
        t.check_keys({"kind", "radii", "alpha"}, "surface");
        const double alpha = t.has("alpha") ? t.at("alpha").as_double() : 2.0;
        return ConvexSurface::ellipsoid(std::move(radii), alpha);
    }
    if (kind == "perturbed_ellipsoid") {
        t.check_keys({"kind", "radii", "epsilon", "coeffs"}, "surface");
        std::vector<double> coeffs;
        for (const auto& c : t.at("coeffs").array()) coeffs.push_back(c.as_double());
        return ConvexSurface::perturbed_ellipsoid(std::move(radii), t.at("epsilon").as_double(),
                                                  std::move(coeffs));
    }
    throw ValidationError("unknown surface kind '" + kind + "'");
}

inline json surface_to_json(const ConvexSurface& s) {
    json j;
    j["kind"] = s.kind() == ConvexSurface::Kind::Ellipsoid ? "ellipsoid" : "perturbed_ellipsoid";
    j["radii"] = s.radii();
    j["alpha"] = s.alpha();
    if (s.kind() == ConvexSurface::Kind::PerturbedEllipsoid) {
        j["epsilon"] = s.epsilon();
        j["coeffs"] = s.coeffs();
    }
    return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Writes through a temp file in the same directory and renames into place.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open file for writing: " + tmp.string());
        out << content;
        if (!out.good()) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string csv_from_rows(const std::vector<std::string>& header,
                                 const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace symindex::io
