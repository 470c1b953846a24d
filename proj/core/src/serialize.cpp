#include "quadsum/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace quadsum {

namespace {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }
cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

json to_json(const QuadFamily& fam) {
    json j;
    j["dim0"] = fam.dim0();
    j["ell"] = fam.ell();
    std::vector<std::int64_t> rows;
    for (int r = 0; r < fam.dim0(); ++r)
        for (int c = 0; c < fam.dim0(); ++c) rows.push_back(fam.J0()(r, c));
    j["J0"] = rows;
    j["disc"] = fam.disc();
    j["conductor"] = fam.conductor();
    return j;
}

QuadFamily family_from_json(const json& j) {
    int dim0 = j.at("dim0").get<int>();
    int ell = j.at("ell").get<int>();
    auto rows = j.at("J0").get<std::vector<std::int64_t>>();
    if (static_cast<int>(rows.size()) != dim0 * dim0)
        throw std::invalid_argument("family_from_json: J0 size mismatch");
    MatI J0(dim0, dim0);
    for (int r = 0; r < dim0; ++r)
        for (int c = 0; c < dim0; ++c) J0(r, c) = rows[r * dim0 + c];
    QuadFamily fam = QuadFamily::build(J0, ell);
    if (j.contains("disc") && j.at("disc").get<std::int64_t>() != fam.disc())
        throw std::invalid_argument("family_from_json: stored disc does not match J0");
    return fam;
}

json to_json(const GaussianFunction& g) {
    json terms = json::array();
    int n = g.dim();
    for (const auto& t : g.terms()) {
        json jt;
        json A = json::array();
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) A.push_back(complex_to_json(t.A(r, c)));
        json b = json::array();
        for (int r = 0; r < n; ++r) b.push_back(complex_to_json(t.b(r)));
        json poly = json::array();
        for (const auto& [mo, coef] : t.poly.terms()) {
            json jm;
            std::vector<int> e(n);
            for (int v = 0; v < n; ++v) e[v] = mo.e[v];
            jm["e"] = e;
            jm["c"] = complex_to_json(coef);
            poly.push_back(jm);
        }
        jt["A"] = A;
        jt["b"] = b;
        jt["poly"] = poly;
        jt["c"] = complex_to_json(t.c);
        terms.push_back(jt);
    }
    return json{{"dim", n}, {"terms", terms}};
}

GaussianFunction gaussian_from_json(const json& j) {
    int n = j.at("dim").get<int>();
    GaussianFunction g(n);
    for (const auto& jt : j.at("terms")) {
        GaussianTerm t;
        t.A = MatC(n, n);
        const auto& A = jt.at("A");
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) t.A(r, c) = complex_from_json(A.at(r * n + c));
        t.b = VecC(n);
        for (int r = 0; r < n; ++r) t.b(r) = complex_from_json(jt.at("b").at(r));
        t.poly = Poly(n);
        for (const auto& jm : jt.at("poly")) {
            Monomial mo;
            auto e = jm.at("e").get<std::vector<int>>();
            for (int v = 0; v < n; ++v) mo.e[v] = static_cast<std::uint8_t>(e.at(v));
            t.poly.add_term(mo, complex_from_json(jm.at("c")));
        }
        t.c = complex_from_json(jt.at("c"));
        g.append(std::move(t));
    }
    return g;
}

json to_json(const TestFunction& tf) {
    return json{{"family", to_json(tf.fam)},
                {"level", tf.level},
                {"arch", to_json(tf.arch)},
                {"dilation", tf.dilation}};
}

TestFunction test_function_from_json(const json& j) {
    QuadFamily fam = family_from_json(j.at("family"));
    return make_test_function(fam, j.at("level").get<int>(), gaussian_from_json(j.at("arch")),
                              j.value("dilation", std::int64_t(1)));
}

json to_json(const SideBreakdown& side) {
    json terms = json::array();
    for (const auto& t : side.terms) {
        terms.push_back(json{{"label", t.label},
                             {"value", complex_to_json(t.value)},
                             {"err_bound", t.err_bound},
                             {"seconds", t.seconds}});
    }
    return json{{"terms", terms},
                {"total", complex_to_json(side.total)},
                {"tail_bound", side.tail_bound}};
}

json to_json(const VerificationReport& rep) {
    return json{{"lhs", to_json(rep.lhs)},
                {"rhs", to_json(rep.rhs)},
                {"abs_deviation", rep.abs_deviation},
                {"rel_deviation", rep.rel_deviation},
                {"seconds", rep.seconds}};
}

json to_json(const ScalingReport& rep) {
    return json{{"a", rep.a},
                {"lhs", complex_to_json(rep.lhs)},
                {"rhs", complex_to_json(rep.rhs)},
                {"rel_deviation", rep.rel_deviation},
                {"lhs_side", to_json(rep.lhs_side)},
                {"rhs_side", to_json(rep.rhs_side)}};
}

json to_json(const CountReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back(json{{"B", r.B},
                            {"count", r.count},
                            {"main_term", r.main_term},
                            {"ratio", r.ratio},
                            {"corrected_ratio", r.corrected_ratio}});
    }
    return json{{"rows", rows},
                {"c_main", complex_to_json(rep.c_main)},
                {"lower_coeff", complex_to_json(rep.lower_coeff)},
                {"c_density_route", complex_to_json(rep.c_density_route)},
                {"c_route_rel_dev", rep.c_route_rel_dev},
                {"sing_series_product", rep.sing_series_product},
                {"sing_series_analytic", rep.sing_series_analytic},
                {"sing_series_rel_dev", rep.sing_series_rel_dev}};
}

json to_json(const ThetaReport& rep) {
    json exps = json::array();
    for (auto [e, c] : rep.exp_coeffs) exps.push_back(json{{"exponent", e}, {"coefficient", c}});
    return json{{"T", rep.T},
                {"integral", rep.integral},
                {"constant_term", rep.constant_term},
                {"reference_total", complex_to_json(rep.reference_total)},
                {"rel_deviation", rep.rel_deviation},
                {"coef_T", rep.coef_T},
                {"exp_coeffs", exps},
                {"fit_residual", rep.fit_residual}};
}

namespace {

void write_side_csv(std::ostream& os, const SideBreakdown& side, const char* which) {
    for (const auto& t : side.terms) {
        os << t.label << ',' << which << ',' << std::setprecision(17) << t.value.real() << ','
           << t.value.imag() << ',' << t.err_bound << '\n';
    }
}

}  // namespace

void write_verification_csv(std::ostream& os, const VerificationReport& rep) {
    os << "term_label,side,real,imag,abs_err_bound\n";
    write_side_csv(os, rep.lhs, "direct");
    write_side_csv(os, rep.rhs, "fourier");
    os << "total,direct," << std::setprecision(17) << rep.lhs.total.real() << ','
       << rep.lhs.total.imag() << ',' << rep.lhs.tail_bound << '\n';
    os << "total,fourier," << std::setprecision(17) << rep.rhs.total.real() << ','
       << rep.rhs.total.imag() << ',' << rep.rhs.tail_bound << '\n';
}

void write_count_csv(std::ostream& os, const CountReport& rep) {
    os << "B,count,main_term,ratio,corrected_ratio\n";
    for (const auto& r : rep.rows) {
        os << std::setprecision(17) << r.B << ',' << r.count << ',' << r.main_term << ','
           << r.ratio << ',' << r.corrected_ratio << '\n';
    }
}

}  // namespace quadsum
