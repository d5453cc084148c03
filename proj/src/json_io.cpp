#include "thetanull/json_io.hpp"

#include <fstream>

namespace thetanull {

namespace {

void expect(bool ok, const std::string& what) {
    if (!ok) fail(errc::invalid_argument, "schema violation: " + what);
}

json real_matrix_json(const RMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

RMat real_matrix_from(const json& j, const char* name) {
    expect(j.is_array() && !j.empty(), std::string(name) + " must be a nonempty array of rows");
    const int rows = static_cast<int>(j.size());
    expect(j[0].is_array() && !j[0].empty(), std::string(name) + " rows must be nonempty arrays");
    const int cols = static_cast<int>(j[0].size());
    RMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        expect(j[static_cast<std::size_t>(i)].is_array() &&
                   static_cast<int>(j[static_cast<std::size_t>(i)].size()) == cols,
               std::string(name) + " rows must have equal length");
        for (int k = 0; k < cols; ++k) {
            const auto& v = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            expect(v.is_number(), std::string(name) + " entries must be numbers");
            m(i, k) = v.get<double>();
        }
    }
    return m;
}

IMat int_matrix_from(const json& j, const char* name) {
    RMat r = real_matrix_from(j, name);
    IMat m(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int k = 0; k < r.cols(); ++k) {
            const double v = r(i, k);
            expect(v == std::floor(v) && std::abs(v) < 9e15,
                   std::string(name) + " entries must be integers");
            m(i, k) = static_cast<std::int64_t>(v);
        }
    return m;
}

Eigen::VectorXi bits_from(const json& j, const char* name) {
    expect(j.is_array() && !j.empty(), std::string(name) + " must be a nonempty array");
    Eigen::VectorXi v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        expect(j[i].is_number_integer(), std::string(name) + " entries must be integers");
        const auto b = j[i].get<long long>();
        expect(b == 0 || b == 1, std::string(name) + " entries must be bits");
        v[static_cast<int>(i)] = static_cast<int>(b);
    }
    return v;
}

}  // namespace

json to_json(const PeriodMatrix& tau) {
    return json{{"g", tau.genus()},
                {"re", real_matrix_json(tau.tau.real())},
                {"im", real_matrix_json(tau.tau.imag())}};
}

PeriodMatrix period_from_json(const json& j, double symmetry_tol) {
    expect(j.is_object() && j.contains("g") && j.contains("re") && j.contains("im"),
           "period matrix needs fields g, re, im");
    expect(j["g"].is_number_integer(), "g must be an integer");
    const int g = j["g"].get<int>();
    RMat re = real_matrix_from(j["re"], "re");
    RMat im = real_matrix_from(j["im"], "im");
    expect(re.rows() == g && re.cols() == g && im.rows() == g && im.cols() == g,
           "re/im must be g x g");
    CMat m(g, g);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) m(a, b) = cx(re(a, b), im(a, b));
    return PeriodMatrix::validate(m, symmetry_tol);
}

json to_json(const SymplecticElement& s) {
    auto int_json = [](const IMat& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    return json{{"g", s.genus()},
                {"a", int_json(s.a)},
                {"b", int_json(s.b)},
                {"c", int_json(s.c)},
                {"d", int_json(s.d)}};
}

SymplecticElement symplectic_from_json(const json& j) {
    expect(j.is_object() && j.contains("g") && j.contains("a") && j.contains("b") &&
               j.contains("c") && j.contains("d"),
           "symplectic element needs fields g, a, b, c, d");
    const int g = j["g"].get<int>();
    IMat a = int_matrix_from(j["a"], "a");
    IMat b = int_matrix_from(j["b"], "b");
    IMat c = int_matrix_from(j["c"], "c");
    IMat d = int_matrix_from(j["d"], "d");
    expect(a.rows() == g && a.cols() == g, "blocks must be g x g");
    try {
        return SymplecticElement(std::move(a), std::move(b), std::move(c), std::move(d));
    } catch (const theta_error& e) {
        fail(errc::invalid_argument, e.what());
    }
}

json to_json(const Characteristic& ch) {
    json e = json::array(), d = json::array();
    for (int i = 0; i < ch.genus(); ++i) {
        e.push_back(ch.eps[i]);
        d.push_back(ch.delta[i]);
    }
    return json{{"eps", std::move(e)}, {"delta", std::move(d)}};
}

Characteristic characteristic_from_json(const json& j) {
    expect(j.is_object() && j.contains("eps") && j.contains("delta"),
           "characteristic needs fields eps, delta");
    Eigen::VectorXi e = bits_from(j["eps"], "eps");
    Eigen::VectorXi d = bits_from(j["delta"], "delta");
    expect(e.size() == d.size(), "eps and delta must have equal length");
    return Characteristic(std::move(e), std::move(d));
}

json to_json(const CMat& m) {
    return json{{"re", real_matrix_json(m.real())}, {"im", real_matrix_json(m.imag())}};
}

CMat cmat_from_json(const json& j) {
    expect(j.is_object() && j.contains("re") && j.contains("im"),
           "complex matrix needs fields re, im");
    RMat re = real_matrix_from(j["re"], "re");
    RMat im = real_matrix_from(j["im"], "im");
    expect(re.rows() == im.rows() && re.cols() == im.cols(), "re/im shapes must agree");
    CMat m(re.rows(), re.cols());
    for (int a = 0; a < re.rows(); ++a)
        for (int b = 0; b < re.cols(); ++b) m(a, b) = cx(re(a, b), im(a, b));
    return m;
}

json to_json(const CVec& v) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < v.size(); ++i) {
        re.push_back(v[i].real());
        im.push_back(v[i].imag());
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

CVec cvec_from_json(const json& j) {
    expect(j.is_object() && j.contains("re") && j.contains("im"),
           "complex vector needs fields re, im");
    const auto& re = j["re"];
    const auto& im = j["im"];
    expect(re.is_array() && im.is_array() && re.size() == im.size() && !re.empty(),
           "re/im must be equal-length arrays");
    CVec v(static_cast<int>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) {
        expect(re[i].is_number() && im[i].is_number(), "vector entries must be numbers");
        v[static_cast<int>(i)] = cx(re[i].get<double>(), im[i].get<double>());
    }
    return v;
}

json to_json(const RankReport& r) {
    json out{{"rows", r.rows},
             {"cols", r.cols},
             {"singular_values", r.singular_values},
             {"numerical_rank", r.numerical_rank},
             {"rel_tol", r.rel_tol_used},
             {"abs_floor", r.abs_floor_used},
             {"threshold", r.threshold()}};
    if (r.witness) out["witness"] = to_json(*r.witness);
    return out;
}

json to_json(const StratumClassification& c) {
    json constants = json::array();
    for (const auto& [ch, v] : c.constants)
        constants.push_back(json{{"char", to_json(ch)}, {"re", v.real()}, {"im", v.imag()},
                                 {"abs", std::abs(v)}});
    json vanishing = json::array();
    for (const auto& e : c.vanishing)
        vanishing.push_back(json{{"char", to_json(e.ch)},
                                 {"abs", std::abs(e.constant)},
                                 {"rank", to_json(e.rank)}});
    json out{{"in_theta_null", c.in_theta_null},
             {"vanish_tol", c.vanish_tol_used},
             {"rank_rel_tol", c.rank_rel_tol_used},
             {"scale", c.scale},
             {"constants", std::move(constants)},
             {"vanishing", std::move(vanishing)}};
    if (c.min_h) out["min_h"] = *c.min_h;
    return out;
}

json to_json(const ThetaJet& jet) {
    json partials = json::array();
    for (std::size_t i = 0; i < jet.mis.size(); ++i)
        partials.push_back(json{{"alpha", jet.mis.indices[i]},
                                {"re", jet.partials[i].real()},
                                {"im", jet.partials[i].imag()}});
    return json{{"genus", jet.genus},
                {"char", to_json(jet.ch)},
                {"order", jet.order},
                {"partials", std::move(partials)},
                {"tail_bound", jet.tail_bound_used},
                {"radius", jet.radius_used},
                {"terms_summed", jet.terms_summed}};
}

json to_json(const SchemeJacobian& jac) {
    return json{{"which", jac.which == SchemeJacobian::Which::s ? "s" : "snull"},
                {"genus", jac.genus},
                {"rows", static_cast<int>(jac.entries.rows())},
                {"cols", static_cast<int>(jac.entries.cols())},
                {"columns", jac.column_names},
                {"entries", to_json(jac.entries)},
                {"tail_bound", jac.tail_bound},
                {"theta_residual", jac.theta_residual},
                {"gradient_residual", jac.gradient_residual}};
}

SchemeJacobian scheme_jacobian_from_json(const json& j) {
    expect(j.is_object() && j.contains("which") && j.contains("genus") &&
               j.contains("columns") && j.contains("entries"),
           "scheme jacobian needs which, genus, columns, entries");
    SchemeJacobian jac;
    jac.which = j["which"].get<std::string>() == "s" ? SchemeJacobian::Which::s
                                                     : SchemeJacobian::Which::s_null;
    jac.genus = j["genus"].get<int>();
    jac.column_names = j["columns"].get<std::vector<std::string>>();
    jac.entries = cmat_from_json(j["entries"]);
    jac.tail_bound = j.value("tail_bound", 0.0);
    jac.theta_residual = j.value("theta_residual", 0.0);
    jac.gradient_residual = j.value("gradient_residual", 0.0);
    return jac;
}

json to_json(const BorderedHessian& bh) {
    return json{{"H", to_json(bh.H)},
                {"dF", to_json(bh.dF)},
                {"B", to_json(bh.B)},
                {"theta_re", bh.theta_at_point.real()},
                {"theta_im", bh.theta_at_point.imag()},
                {"tail_bound", bh.tail_bound}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::invalid_argument, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::invalid_argument, std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

}  // namespace thetanull
