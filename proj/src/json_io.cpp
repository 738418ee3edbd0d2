#include "torelli/json_io.hpp"

#include <sstream>

namespace torelli {

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(const std::string& data) {
    std::ostringstream os;
    os << std::hex << fnv1a64(data);
    return os.str();
}

namespace {

Scalar scalar_from_json(const ordered_json& j, const Field& f) {
    if (j.is_number_integer()) return Scalar::integer(f, j.get<long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), f);
    throw InputError("coordinate must be a string or integer, got " + j.dump());
}

ordered_json vec_to_json(const Vec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
}

Vec vec_from_json(const ordered_json& j, const Field& f) {
    if (!j.is_array()) throw InputError("expected an array of coordinates");
    Vec v;
    for (const auto& e : j) v.push_back(scalar_from_json(e, f));
    return v;
}

}  // namespace

Field field_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("type")) throw InputError("field must be {\"type\": ...}");
    std::string t = j["type"].get<std::string>();
    if (t == "rational") return Field::rational();
    if (t == "prime") {
        if (!j.contains("p")) throw InputError("prime field needs \"p\"");
        uint64_t p = j["p"].get<uint64_t>();
        try {
            return Field::prime(p);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    throw InputError("unknown field type: " + t);
}

ordered_json field_to_json(const Field& f) {
    ordered_json j;
    j["type"] = f.is_rational() ? "rational" : "prime";
    if (f.is_prime()) j["p"] = f.p;
    return j;
}

Arrangement arrangement_from_json(const ordered_json& j) {
    if (!j.is_object()) throw InputError("arrangement file must be a JSON object");
    for (const char* key : {"n", "field", "points"})
        if (!j.contains(key)) throw InputError(std::string("arrangement file missing \"") + key + "\"");
    size_t n = j["n"].get<size_t>();
    if (n < 1) throw InputError("n must be at least 1");
    Field f = field_from_json(j["field"]);
    if (!j["points"].is_array() || j["points"].empty()) throw InputError("points must be a nonempty array");
    std::vector<ProjPoint> pts;
    for (const auto& pj : j["points"]) {
        Vec v = vec_from_json(pj, f);
        if (v.size() != n + 1)
            throw InputError("each point needs n+1 = " + std::to_string(n + 1) + " coordinates, got " +
                             std::to_string(v.size()));
        try {
            pts.emplace_back(n, std::move(v));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    if (j.contains("labels") && j["labels"].size() != pts.size())
        throw InputError("labels, when present, must match the point count");
    try {
        return Arrangement(n, std::move(pts));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

ordered_json arrangement_to_json(const Arrangement& z) {
    ordered_json j;
    j["n"] = z.n();
    j["field"] = field_to_json(z.field());
    ordered_json pts = ordered_json::array();
    for (const auto& p : z.points()) pts.push_back(vec_to_json(p.coords()));
    j["points"] = pts;
    return j;
}

ProjPoint point_from_json(const ordered_json& j, size_t n, const Field& f) {
    Vec v = vec_from_json(j, f);
    if (v.size() != n + 1) throw InputError("point needs n+1 coordinates");
    try {
        return ProjPoint(n, std::move(v));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

ordered_json point_to_json(const ProjPoint& p) { return vec_to_json(p.coords()); }

ProjPoint point_from_string(const std::string& s, size_t n, const Field& f) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != n + 1)
        throw InputError("point literal needs n+1 = " + std::to_string(n + 1) + " coordinates");
    Vec v;
    for (const auto& p : parts) {
        try {
            v.push_back(Scalar::parse(p, f));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    try {
        return ProjPoint(n, std::move(v));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

LinMatrix linmatrix_from_json(const ordered_json& j, const Field& f) {
    const ordered_json* rows = &j;
    if (j.is_object()) {
        if (!j.contains("matrix")) throw InputError("matrix file needs \"matrix\"");
        rows = &j["matrix"];
    }
    if (!rows->is_array() || rows->empty() || !(*rows)[0].is_array() || (*rows)[0].empty())
        throw InputError("matrix must be a nonempty 2d array of coefficient vectors");
    size_t a = rows->size(), b = (*rows)[0].size();
    size_t nv = (*rows)[0][0].size();
    if (nv == 0) throw InputError("coefficient vectors must be nonempty");
    LinMatrix m(a, b, nv, f);
    for (size_t i = 0; i < a; ++i) {
        if ((*rows)[i].size() != b) throw InputError("ragged matrix rows");
        for (size_t jj = 0; jj < b; ++jj) {
            Vec v = vec_from_json((*rows)[i][jj], f);
            if (v.size() != nv) throw InputError("inconsistent coefficient vector length");
            m.set(i, jj, std::move(v));
        }
    }
    return m;
}

ordered_json linmatrix_to_json(const LinMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(vec_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["variables"] = m.nvars();
    j["entries"] = rows;
    return j;
}

ordered_json steiner_to_json(const SteinerMatrix& m) {
    ordered_json j;
    j["a"] = m.a();
    j["b"] = m.b();
    j["matrix"] = linmatrix_to_json(m.mat)["entries"];
    ordered_json pts = ordered_json::array();
    for (const auto& p : m.points.points()) pts.push_back(point_to_json(p));
    j["points"] = pts;
    j["order"] = m.order;
    ordered_json beta = ordered_json::array();
    for (size_t i = 0; i < m.beta.rows(); ++i) beta.push_back(vec_to_json(m.beta.row(i)));
    j["beta"] = beta;
    j["dropped"] = point_to_json(m.dropped());
    j["zero-rows"] = m.zero_rows;
    return j;
}

ordered_json verify_report_to_json(const VerifySteinerReport& r) {
    ordered_json j;
    j["column-divisibility"] = r.column_divisibility;
    j["row-relations"] = r.row_relations;
    j["generic-rank"] = r.generic_rank;
    j["generic-rank-ok"] = r.generic_rank_ok;
    j["violations"] = r.violations;
    j["ok"] = r.ok();
    return j;
}

ordered_json resolution_to_json(const ResolutionData& r) {
    ordered_json j;
    j["rank"] = r.rank;
    j["c1"] = r.c1;
    j["slope"] = r.slope.str();
    j["hilbert-coefficients"] = vec_to_json(r.hilbert_coeffs);
    return j;
}

ordered_json kw_to_json(const KWVariety& y) {
    ordered_json j;
    j["n"] = y.n;
    j["field"] = field_to_json(y.f);
    ordered_json type;
    type["d"] = y.d;
    type["parts"] = y.type_parts();
    j["type"] = type;
    if (y.curve) {
        ordered_json c;
        c["degree"] = y.curve->degree;
        ordered_json cols = ordered_json::array();
        for (size_t k = 0; k <= y.curve->degree; ++k) cols.push_back(vec_to_json(y.curve->coeff.col(k)));
        c["coefficients"] = cols;
        j["curve"] = c;
    } else {
        j["curve"] = nullptr;
    }
    ordered_json parts = ordered_json::array();
    for (const auto& p : y.parts) {
        ordered_json pj;
        pj["ni"] = p.ni;
        ordered_json basis = ordered_json::array();
        for (size_t i = 0; i < p.space.basis().rows(); ++i) basis.push_back(vec_to_json(p.space.basis().row(i)));
        pj["basis"] = basis;
        pj["attachment"] = p.attachment ? point_to_json(*p.attachment) : ordered_json(nullptr);
        parts.push_back(pj);
    }
    j["linear-parts"] = parts;
    ordered_json conj = ordered_json::array();
    for (const auto& c : y.conjugate) {
        ordered_json cj;
        cj["factor"] = vec_to_json(c.factor.c);
        cj["size"] = c.size;
        ordered_json basis = ordered_json::array();
        for (size_t i = 0; i < c.block_space.basis().rows(); ++i)
            basis.push_back(vec_to_json(c.block_space.basis().row(i)));
        cj["basis"] = basis;
        conj.push_back(cj);
    }
    j["conjugate-blocks"] = conj;
    j["distinguished"] = y.distinguished ? point_to_json(*y.distinguished) : ordered_json(nullptr);
    j["matrix"] = linmatrix_to_json(y.m)["entries"];
    j["warnings"] = y.warnings;
    return j;
}

KWVariety kw_from_json(const ordered_json& doc) {
    const ordered_json* jp = &doc;
    if (doc.contains("certificates") && doc["certificates"].is_array() && !doc["certificates"].empty())
        jp = &doc["certificates"][0];
    const ordered_json& j = *jp;
    for (const char* key : {"n", "field", "type", "linear-parts", "matrix"})
        if (!j.contains(key)) throw InputError(std::string("certificate missing \"") + key + "\"");
    KWVariety y;
    y.n = j["n"].get<size_t>();
    y.f = field_from_json(j["field"]);
    y.d = j["type"]["d"].get<size_t>();
    if (j.contains("curve") && !j["curve"].is_null()) {
        size_t deg = j["curve"]["degree"].get<size_t>();
        const auto& cols = j["curve"]["coefficients"];
        if (!cols.is_array() || cols.size() != deg + 1) throw InputError("curve needs degree+1 coefficient columns");
        Matrix cc(y.n + 1, deg + 1, y.f);
        for (size_t k = 0; k <= deg; ++k) {
            Vec col = vec_from_json(cols[k], y.f);
            if (col.size() != y.n + 1) throw InputError("curve coefficient column has wrong length");
            for (size_t i = 0; i <= y.n; ++i) cc.set(i, k, col[i]);
        }
        y.curve = CurveData{deg, cc};
    }
    for (const auto& pj : j["linear-parts"]) {
        KWLinearPart part;
        part.ni = pj["ni"].get<size_t>();
        std::vector<Vec> rows;
        for (const auto& rj : pj["basis"]) rows.push_back(vec_from_json(rj, y.f));
        part.space = LinearSubspace(y.n, rows, y.f);
        if (pj.contains("attachment") && !pj["attachment"].is_null())
            part.attachment = point_from_json(pj["attachment"], y.n, y.f);
        y.parts.push_back(std::move(part));
    }
    if (j.contains("conjugate-blocks"))
        for (const auto& cj : j["conjugate-blocks"]) {
            KWConjugateBlock cb;
            cb.factor = BinaryForm(y.f, vec_from_json(cj["factor"], y.f));
            cb.size = cj["size"].get<size_t>();
            std::vector<Vec> rows;
            for (const auto& rj : cj["basis"]) rows.push_back(vec_from_json(rj, y.f));
            cb.block_space = LinearSubspace(y.n, rows, y.f);
            y.conjugate.push_back(std::move(cb));
        }
    if (j.contains("distinguished") && !j["distinguished"].is_null())
        y.distinguished = point_from_json(j["distinguished"], y.n, y.f);
    {
        ordered_json wrap;
        wrap["matrix"] = j["matrix"];
        y.m = linmatrix_from_json(wrap, y.f);
        if (y.m.rows() != 2 || y.m.cols() != y.n || y.m.nvars() != y.n + 1)
            throw InputError("certificate matrix must be 2 x n in n+1 variables");
    }
    if (j.contains("warnings"))
        for (const auto& w : j["warnings"]) y.warnings.push_back(w.get<std::string>());
    return y;
}

ordered_json witness_a_to_json(const WitnessA& w) {
    ordered_json j;
    j["v"] = vec_to_json(w.v);
    j["w"] = vec_to_json(w.w);
    return j;
}

ordered_json witness_b_to_json(const WitnessB& w) {
    ordered_json j;
    ordered_json h = ordered_json::array(), g = ordered_json::array();
    for (const auto& form : w.h) h.push_back(vec_to_json(form));
    for (const auto& form : w.g) g.push_back(vec_to_json(form));
    j["h"] = h;
    j["g"] = g;
    return j;
}

ordered_json scan_to_json(const std::vector<ScanEntry>& entries) {
    ordered_json a = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json ej;
        ej["point"] = point_to_json(e.point);
        ej["kernel-dim"] = e.dim;
        a.push_back(ej);
    }
    return a;
}

ordered_json verdict_to_json(const Verdict& v) {
    ordered_json j;
    switch (v.kind) {
        case Verdict::Kind::Torelli: j["kind"] = "torelli"; break;
        case Verdict::Kind::NonTorelli: j["kind"] = "non-torelli"; break;
        case Verdict::Kind::Unknown: j["kind"] = "unknown"; break;
    }
    switch (v.reason) {
        case Verdict::Reason::NoQuadric: j["reason"] = "no-quadric"; break;
        case Verdict::Reason::ConicRank: j["reason"] = "conic-rank"; break;
        case Verdict::Reason::ExhaustiveScan: j["reason"] = "exhaustive-scan"; break;
        case Verdict::Reason::Certificate: j["reason"] = "certificate"; break;
        case Verdict::Reason::None: j["reason"] = nullptr; break;
    }
    j["unconditional"] =
        v.kind == Verdict::Kind::Torelli &&
        (v.reason == Verdict::Reason::NoQuadric || v.reason == Verdict::Reason::ConicRank);
    j["witness"] = v.witness ? point_to_json(*v.witness) : ordered_json(nullptr);
    ordered_json diag;
    diag["candidates-tested"] = v.diag.candidates_tested;
    diag["primes-scanned"] = v.diag.primes_scanned;
    diag["clean-primes"] = v.diag.clean_primes;
    diag["bad-primes"] = v.diag.bad_primes;
    diag["lifted-candidates"] = v.diag.lifted_candidates;
    diag["lifted-failures"] = v.diag.lifted_failures;
    j["diagnostics"] = diag;
    return j;
}

ordered_json decomposition_to_json(const Decomposition& d) {
    ordered_json j;
    ordered_json pieces = ordered_json::array();
    for (const auto& p : d.pieces) {
        ordered_json pj;
        pj["label"] = p.label;
        pj["members"] = p.members;
        pj["length"] = p.length;
        pj["resolution"] = resolution_to_json(p.data);
        pj["direct-summand"] = p.direct_summand;
        pieces.push_back(pj);
    }
    j["pieces"] = pieces;
    j["total"] = resolution_to_json(d.total);
    j["additivity-ok"] = d.additivity_ok;
    j["slopes-equal"] = d.slopes_equal;
    j["notes"] = d.notes;
    return j;
}

ordered_json reconstruct_to_json(const ReconstructReport& r) {
    ordered_json j;
    j["all-observed-unstable"] = r.all_observed_unstable;
    j["shapes-match"] = r.shapes_match;
    j["hilbert-match"] = r.hilbert_match;
    j["profiles-match"] = r.profiles_match;
    j["primes-compared"] = r.primes_compared;
    j["summand-screen-fired"] = r.summand_screen_fired;
    j["notes"] = r.notes;
    return j;
}

ordered_json make_report(const std::string& command, const std::string& input_digest, ordered_json result,
                         ordered_json certificates, std::vector<std::string> warnings) {
    ordered_json j;
    j["command"] = command;
    j["input-digest"] = input_digest;
    j["result"] = std::move(result);
    j["certificates"] = std::move(certificates);
    j["warnings"] = warnings;
    return j;
}

}  // namespace torelli
