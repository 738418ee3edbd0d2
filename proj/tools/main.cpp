#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "torelli/json_io.hpp"

using namespace torelli;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in " + what + ": " + e.what());
    }
}

struct Emit {
    bool human = false;

    void operator()(const ordered_json& report) const {
        if (!human) {
            std::cout << report.dump(2) << "\n";
            return;
        }
        std::cout << report["command"].get<std::string>() << " (input " << report["input-digest"].get<std::string>()
                  << ")\n";
        std::cout << report["result"].dump(2) << "\n";
        if (!report["warnings"].empty()) {
            std::cout << "warnings:\n";
            for (const auto& w : report["warnings"]) std::cout << "  - " << w.get<std::string>() << "\n";
        }
    }
};

ProjPoint parse_point_opt(const std::string& s, const Arrangement& z) {
    return point_from_string(s, z.n(), z.field());
}

int cmd_build_matrix(const std::string& file, const Emit& emit) {
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    SteinerMatrix m = build_steiner(z);
    VerifySteinerReport rep = verify_steiner(m);
    ordered_json result;
    result["steiner"] = steiner_to_json(m);
    result["verify"] = verify_report_to_json(rep);
    std::vector<std::string> warnings;
    if (m.zero_rows) warnings.push_back("l = n+1: the presentation has zero rows (F_Z is numerically trivial)");
    emit(make_report("build-matrix", digest_hex(text), result, ordered_json::array(), warnings));
    return 0;
}

int cmd_unstable(const std::string& file, const std::string& point, const Emit& emit) {
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    ProjPoint y = parse_point_opt(point, z);
    SteinerMatrix m = build_steiner(z);

    ordered_json result;
    UnstableResult a = is_unstable_matrix(m.mat, y);
    ordered_json ja;
    ja["unstable"] = a.unstable;
    ja["kernel-dim"] = a.dim;
    ja["witness"] = a.witness_a ? witness_a_to_json(*a.witness_a) : ordered_json(nullptr);
    result["test-a"] = ja;

    std::vector<std::string> warnings;
    if (z.contains(y)) {
        result["test-b"] = nullptr;
        warnings.push_back("y lies in Z: the section test requires y outside Z; test A already applies");
    } else {
        UnstableResult b = is_unstable_sections(z, y);
        ordered_json jb;
        jb["unstable"] = b.unstable;
        jb["solution-dim"] = b.dim;
        jb["witness"] = b.witness_b ? witness_b_to_json(*b.witness_b) : ordered_json(nullptr);
        result["test-b"] = jb;
        if (a.unstable != b.unstable) warnings.push_back("tests disagree: this should never happen");
    }
    emit(make_report("unstable", digest_hex(text), result, ordered_json::array(), warnings));
    return 0;
}

int cmd_scan(const std::string& file, const std::vector<uint64_t>& primes, unsigned threads, const Emit& emit) {
    if (primes.empty()) throw InputError("scan needs at least one --prime");
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    ordered_json result = ordered_json::array();
    std::vector<std::string> warnings;
    for (uint64_t p : primes) {
        ordered_json pj;
        pj["prime"] = p;
        Arrangement zp = reduce_mod_p(z, p);
        SteinerMatrix m = build_steiner(zp);
        auto entries = scan_unstable(m.mat, threads);
        pj["count"] = entries.size();
        pj["unstable"] = scan_to_json(entries);
        ordered_json extra = ordered_json::array();
        for (const auto& e : entries)
            if (!zp.contains(e.point)) extra.push_back(point_to_json(e.point));
        pj["extra-beyond-Z"] = extra;
        result.push_back(pj);
    }
    emit(make_report("scan", digest_hex(text), result, ordered_json::array(), warnings));
    return 0;
}

int cmd_torelli(const std::string& file, const std::vector<uint64_t>& primes, unsigned threads, const Emit& emit) {
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    TorelliOptions opts;
    if (!primes.empty()) opts.primes = primes;
    opts.threads = threads;
    Verdict v = decide_torelli(z, opts);
    ordered_json certs = ordered_json::array();
    std::vector<std::string> warnings;
    if (v.certificate) {
        certs.push_back(kw_to_json(*v.certificate));
        std::string why;
        if (!reverify_verdict(z, v, &why)) warnings.push_back("certificate failed re-verification: " + why);
    }
    if (v.kind == Verdict::Kind::Torelli && v.reason == Verdict::Reason::ExhaustiveScan)
        warnings.push_back("Torelli verdict rests on clean exhaustive scans over the listed primes, not on an "
                           "unconditional criterion");
    emit(make_report("torelli", digest_hex(text), verdict_to_json(v), certs, warnings));
    return v.kind == Verdict::Kind::Unknown ? 3 : 0;
}

int cmd_kw_certify(const std::string& file, const std::string& point, const Emit& emit) {
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    ProjPoint y = parse_point_opt(point, z);
    if (z.contains(y)) throw std::invalid_argument("kw-certify needs y outside Z");
    UnstableResult r = is_unstable_sections(z, y);
    if (!r.unstable) throw std::invalid_argument("point " + y.str() + " is not unstable for F_Z");
    KWVariety kw = kw_from_witness(z, y, *r.witness_b);
    KWValidation val = kw_validate(kw);
    ordered_json result;
    ordered_json type;
    type["d"] = kw.d;
    type["parts"] = kw.type_parts();
    result["type"] = type;
    result["validation-ok"] = val.ok;
    result["violations"] = val.violations;
    result["skipped-checks"] = val.skipped;
    ordered_json members = ordered_json::array();
    for (const auto& p : z.points()) {
        auto mem = kw_membership(kw, p);
        ordered_json mj;
        mj["point"] = point_to_json(p);
        mj["member"] = mem.member;
        mj["component"] = mem.component;
        members.push_back(mj);
    }
    result["membership"] = members;
    ordered_json certs = ordered_json::array();
    certs.push_back(kw_to_json(kw));
    emit(make_report("kw-certify", digest_hex(text), result, certs, kw.warnings));
    return 0;
}

int cmd_decompose(const std::string& file, const std::string& kwfile, const Emit& emit) {
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    KWVariety kw = kw_from_json(parse_json(read_file(kwfile), kwfile));
    Decomposition dec = decompose(z, kw);
    emit(make_report("decompose", digest_hex(text), decomposition_to_json(dec), ordered_json::array(), {}));
    return 0;
}

int cmd_hilbert(const std::string& file, const Emit& emit) {
    std::string text = read_file(file);
    Arrangement z = arrangement_from_json(parse_json(text, file));
    ResolutionData h = hilbert_data(z.size(), z.n());
    ordered_json result = resolution_to_json(h);
    result["l"] = z.size();
    result["n"] = z.n();
    emit(make_report("hilbert", digest_hex(text), result, ordered_json::array(), {}));
    return 0;
}

int cmd_steiner_scan(const std::string& matrix_file, const std::vector<uint64_t>& primes, unsigned threads,
                     const Emit& emit) {
    if (primes.empty()) throw InputError("steiner-scan needs at least one --prime");
    std::string text = read_file(matrix_file);
    ordered_json doc = parse_json(text, matrix_file);
    Field f = doc.is_object() && doc.contains("field") ? field_from_json(doc["field"]) : Field::rational();
    LinMatrix m = linmatrix_from_json(doc, f);
    ordered_json result = ordered_json::array();
    for (uint64_t p : primes) {
        ordered_json pj;
        pj["prime"] = p;
        auto entries = steiner_unstable_profile(m, p, threads);
        pj["count"] = entries.size();
        pj["unstable"] = scan_to_json(entries);
        result.push_back(pj);
    }
    emit(make_report("steiner-scan", digest_hex(text), result, ordered_json::array(), {}));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Steiner/logarithmic-sheaf toolkit for hyperplane arrangements"};
    app.require_subcommand(1);

    bool human = false;
    app.add_flag("--human", human, "human-readable output (default: JSON report)");
    bool json_flag = false;
    app.add_flag("--json", json_flag, "JSON report output (default)");

    std::string file, point, kwfile, matrix_file;
    std::vector<uint64_t> primes;
    unsigned threads = 0;

    auto* build = app.add_subcommand("build-matrix", "Steiner matrix of the arrangement, with verification");
    build->add_option("file", file)->required();

    auto* unstable = app.add_subcommand("unstable", "instability of a hyperplane by both exact tests");
    unstable->add_option("file", file)->required();
    unstable->add_option("--point", point, "coordinates a,b,c,... of the dual point")->required();

    auto* scan = app.add_subcommand("scan", "exhaustive unstable-point scan over finite fields");
    scan->add_option("file", file)->required();
    scan->add_option("--prime", primes, "prime modulus (repeatable)")->required();
    scan->add_option("--threads", threads);

    auto* torelli_cmd = app.add_subcommand("torelli", "layered Torelli decision with certificates");
    torelli_cmd->add_option("file", file)->required();
    torelli_cmd->add_option("--prime", primes, "primes for the scan layer");
    torelli_cmd->add_option("--threads", threads);

    auto* kwc = app.add_subcommand("kw-certify", "Kronecker-Weierstrass certificate at an unstable point");
    kwc->add_option("file", file)->required();
    kwc->add_option("--point", point)->required();

    auto* dec = app.add_subcommand("decompose", "filtration bookkeeping for Z inside a KW variety");
    dec->add_option("file", file)->required();
    dec->add_option("--kw", kwfile, "certificate file (from kw-certify or torelli)")->required();

    auto* hil = app.add_subcommand("hilbert", "resolution and Hilbert-polynomial data");
    hil->add_option("file", file)->required();

    auto* sscan = app.add_subcommand("steiner-scan", "unstable profile of an arbitrary Steiner-shaped matrix");
    sscan->add_option("--matrix", matrix_file)->required();
    sscan->add_option("--prime", primes)->required();
    sscan->add_option("--threads", threads);

    CLI11_PARSE(app, argc, argv);
    Emit emit{human && !json_flag};

    try {
        if (*build) return cmd_build_matrix(file, emit);
        if (*unstable) return cmd_unstable(file, point, emit);
        if (*scan) return cmd_scan(file, primes, threads, emit);
        if (*torelli_cmd) return cmd_torelli(file, primes, threads, emit);
        if (*kwc) return cmd_kw_certify(file, point, emit);
        if (*dec) return cmd_decompose(file, kwfile, emit);
        if (*hil) return cmd_hilbert(file, emit);
        if (*sscan) return cmd_steiner_scan(matrix_file, primes, threads, emit);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const DecomposeError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const BadPrime& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const KWInconsistent& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
