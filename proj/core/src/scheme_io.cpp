#include "heraldiq/scheme_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace heraldiq {

namespace {

using nlohmann::json;

json element_to_json(const Element& e) {
    json j;
    if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
        j["type"] = "bs";
        j["i"] = bs->i;
        j["j"] = bs->j;
        j["theta"] = bs->theta;
        j["phi"] = bs->phi;
    } else if (const auto* ps = std::get_if<PhaseShift>(&e)) {
        j["type"] = "phase";
        j["mode"] = ps->mode;
        j["phi"] = ps->phi;
    } else if (const auto* sw = std::get_if<Swap>(&e)) {
        j["type"] = "swap";
        j["i"] = sw->i;
        j["j"] = sw->j;
    } else if (const auto* df = std::get_if<DftBlock>(&e)) {
        j["type"] = "dft";
        j["modes"] = df->modes;
    } else if (const auto* ub = std::get_if<UnitaryBlock>(&e)) {
        j["type"] = "unitary";
        j["modes"] = ub->modes;
        json rows = json::array();
        for (Eigen::Index r = 0; r < ub->matrix.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < ub->matrix.cols(); ++c) {
                row.push_back({ub->matrix(r, c).real(), ub->matrix(r, c).imag()});
            }
            rows.push_back(row);
        }
        j["matrix"] = rows;
    }
    return j;
}

Element element_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "bs") {
        return BeamSplitter{j.at("i").get<int>(), j.at("j").get<int>(),
                            j.at("theta").get<double>(), j.value("phi", 0.0)};
    }
    if (type == "phase") {
        return PhaseShift{j.at("mode").get<int>(), j.at("phi").get<double>()};
    }
    if (type == "swap") {
        return Swap{j.at("i").get<int>(), j.at("j").get<int>()};
    }
    if (type == "dft") {
        return DftBlock{j.at("modes").get<std::vector<int>>()};
    }
    if (type == "unitary") {
        const auto modes = j.at("modes").get<std::vector<int>>();
        const auto& rows = j.at("matrix");
        Matrix m(rows.size(), rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& row = rows.at(r);
            if (row.size() != rows.size()) {
                throw std::runtime_error("scheme file: unitary block is not square");
            }
            for (std::size_t c = 0; c < row.size(); ++c) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    Complex(row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>());
            }
        }
        return UnitaryBlock{modes, std::move(m)};
    }
    throw std::runtime_error("scheme file: unknown element type '" + type + "'");
}

json detector_to_json(const DetectorModel& d) {
    json j;
    switch (d.kind) {
        case DetectorKind::IdealPnr: j["kind"] = "pnr"; break;
        case DetectorKind::Threshold: j["kind"] = "threshold"; break;
        case DetectorKind::FanoutPnr:
            j["kind"] = "fanout";
            j["branches"] = d.branches;
            break;
    }
    if (d.efficiency < 1.0) j["efficiency"] = d.efficiency;
    if (d.dark_count_prob > 0.0) j["dark"] = d.dark_count_prob;
    return j;
}

DetectorModel detector_from_json(const json& j) {
    DetectorModel d;
    const std::string kind = j.value("kind", "pnr");
    if (kind == "pnr") {
        d.kind = DetectorKind::IdealPnr;
    } else if (kind == "threshold") {
        d.kind = DetectorKind::Threshold;
    } else if (kind == "fanout") {
        d.kind = DetectorKind::FanoutPnr;
        d.branches = j.value("branches", 2);
    } else {
        throw std::runtime_error("scheme file: unknown detector kind '" + kind + "'");
    }
    d.efficiency = j.value("efficiency", 1.0);
    d.dark_count_prob = j.value("dark", 0.0);
    d.validate();
    return d;
}

const char* target_kind_name(TargetSpec::Kind k) {
    switch (k) {
        case TargetSpec::Kind::Bell: return "bell";
        case TargetSpec::Kind::Ghz: return "ghz";
        case TargetSpec::Kind::Noon: return "noon";
        case TargetSpec::Kind::W: return "w";
        case TargetSpec::Kind::PhiAlpha: return "phi_alpha";
    }
    return "?";
}

}  // namespace

SchemeDefinition read_scheme_json(const std::string& text) {
    const json j = json::parse(text);
    SchemeDefinition s;
    s.name = j.at("name").get<std::string>();
    s.circuit.modes = j.at("modes").get<int>();
    for (const auto& je : j.at("elements")) s.circuit.elements.push_back(element_from_json(je));
    s.input = ModeOccupation(j.at("input").get<std::vector<int>>());

    if (j.contains("postselect")) {
        s.postselected = true;
        for (const auto& p : j.at("postselect").at("register")) {
            s.postselect_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        }
    } else {
        const auto& jh = j.at("herald");
        s.herald_spec.herald_modes = jh.at("modes").get<std::vector<int>>();
        if (jh.contains("patterns")) {
            std::vector<HeraldPattern> pats;
            for (const auto& jp : jh.at("patterns")) {
                HeraldPattern p;
                if (jp.is_array()) {
                    p.clicks = jp.get<std::vector<int>>();
                } else {
                    p.clicks = jp.at("clicks").get<std::vector<int>>();
                    p.correction = jp.value("correction", "");
                }
                pats.push_back(std::move(p));
            }
            s.herald_spec.accepted = std::move(pats);
        } else if (jh.contains("predicate")) {
            const auto& jp = jh.at("predicate");
            const std::string type = jp.at("type").get<std::string>();
            if (type == "total") {
                s.herald_spec.accepted = AcceptTotal{jp.at("value").get<int>()};
            } else if (type == "any") {
                s.herald_spec.accepted = AcceptAny{};
            } else {
                throw std::runtime_error("scheme file: unknown predicate '" + type + "'");
            }
        } else {
            throw std::runtime_error("scheme file: herald needs patterns or predicate");
        }
        if (j.contains("detectors")) {
            for (const auto& jd : j.at("detectors")) s.detectors.push_back(detector_from_json(jd));
        } else {
            s.detectors.assign(s.herald_spec.herald_modes.size(), DetectorModel::ideal_pnr());
        }
    }

    const auto& jt = j.at("target");
    const std::string kind = jt.at("kind").get<std::string>();
    const auto params = jt.value("params", json::object());
    if (kind == "bell") {
        s.target.kind = TargetSpec::Kind::Bell;
        s.target.bell = bell_from_name(params.value("variant", "phi+"));
    } else if (kind == "ghz") {
        s.target.kind = TargetSpec::Kind::Ghz;
        s.target.n = params.at("n").get<int>();
        s.target.d = params.value("d", 2);
    } else if (kind == "noon") {
        s.target.kind = TargetSpec::Kind::Noon;
        s.target.n = params.at("n").get<int>();
    } else if (kind == "w") {
        s.target.kind = TargetSpec::Kind::W;
        s.target.n = params.at("n").get<int>();
    } else if (kind == "phi_alpha") {
        s.target.kind = TargetSpec::Kind::PhiAlpha;
        s.target.alpha = params.at("alpha").get<double>();
    } else {
        throw std::runtime_error("scheme file: unknown target kind '" + kind + "'");
    }
    if (jt.contains("register")) {
        const auto& jr = jt.at("register");
        if (!jr.empty() && jr.at(0).size() == 2 && s.target.kind != TargetSpec::Kind::Ghz) {
            for (const auto& p : jr) {
                s.target.register_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
            }
        } else {
            for (const auto& p : jr) {
                s.target.register_rails.push_back(p.get<std::vector<int>>());
            }
        }
    }

    if (j.contains("expected_success")) {
        const auto& je = j.at("expected_success");
        if (je.is_number()) {
            Rational r;
            if (approximate_rational(je.get<double>(), r, 1'000'000'000, 1e-12)) {
                s.expected_success = r;
            }
        } else {
            s.expected_success = Rational(je.at("num").get<std::int64_t>(),
                                          je.at("den").get<std::int64_t>());
        }
    }
    const std::string corr = j.value("correction_class", "phases");
    s.correction = corr == "none"     ? CorrectionClass::None
                   : corr == "paulis" ? CorrectionClass::Paulis
                                      : CorrectionClass::Phases;
    s.provenance = j.value("provenance", "external");
    s.note = j.value("note", "");
    s.validate();
    return s;
}

SchemeDefinition read_scheme_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scheme file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return read_scheme_json(ss.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string write_scheme_json(const SchemeDefinition& s) {
    json j;
    j["name"] = s.name;
    j["modes"] = s.circuit.modes;
    json elems = json::array();
    for (const auto& e : s.circuit.elements) elems.push_back(element_to_json(e));
    j["elements"] = std::move(elems);
    j["input"] = s.input.counts();
    if (s.postselected) {
        json reg = json::array();
        for (const auto& [a, b] : s.postselect_pairs) reg.push_back({a, b});
        j["postselect"]["register"] = std::move(reg);
    } else {
        j["herald"]["modes"] = s.herald_spec.herald_modes;
        if (const auto* pats = std::get_if<std::vector<HeraldPattern>>(&s.herald_spec.accepted)) {
            json jp = json::array();
            for (const auto& p : *pats) {
                json one;
                one["clicks"] = p.clicks;
                if (!p.correction.empty()) one["correction"] = p.correction;
                jp.push_back(std::move(one));
            }
            j["herald"]["patterns"] = std::move(jp);
        } else if (const auto* total = std::get_if<AcceptTotal>(&s.herald_spec.accepted)) {
            j["herald"]["predicate"] = {{"type", "total"}, {"value", total->total}};
        } else {
            j["herald"]["predicate"] = {{"type", "any"}};
        }
        json dets = json::array();
        for (const auto& d : s.detectors) dets.push_back(detector_to_json(d));
        j["detectors"] = std::move(dets);
    }
    json jt;
    jt["kind"] = target_kind_name(s.target.kind);
    json params = json::object();
    switch (s.target.kind) {
        case TargetSpec::Kind::Bell: params["variant"] = bell_name(s.target.bell); break;
        case TargetSpec::Kind::Ghz:
            params["n"] = s.target.n;
            params["d"] = s.target.d;
            break;
        case TargetSpec::Kind::Noon:
        case TargetSpec::Kind::W: params["n"] = s.target.n; break;
        case TargetSpec::Kind::PhiAlpha: params["alpha"] = s.target.alpha; break;
    }
    jt["params"] = std::move(params);
    if (!s.target.register_pairs.empty()) {
        json reg = json::array();
        for (const auto& [a, b] : s.target.register_pairs) reg.push_back({a, b});
        jt["register"] = std::move(reg);
    } else if (!s.target.register_rails.empty()) {
        jt["register"] = s.target.register_rails;
    }
    j["target"] = std::move(jt);
    if (s.expected_success) {
        j["expected_success"] = {{"num", s.expected_success->num()},
                                 {"den", s.expected_success->den()}};
    }
    j["correction_class"] = s.correction == CorrectionClass::None     ? "none"
                            : s.correction == CorrectionClass::Paulis ? "paulis"
                                                                      : "phases";
    if (!s.provenance.empty()) j["provenance"] = s.provenance;
    if (!s.note.empty()) j["note"] = s.note;
    return j.dump(2) + "\n";
}

void write_scheme_file(const std::string& path, const SchemeDefinition& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scheme file: " + path);
    out << write_scheme_json(s);
}

}  // namespace heraldiq
