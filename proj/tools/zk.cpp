// zk: compute Tor-algebra / moment-angle cohomology invariants of finite
// simplicial complexes, run the combinatorial rigidity predicates, build the
// catalog constructions, and validate quasitoric characteristic matrices.
//
// Exit codes: 0 ok; 1 negative verdict (mismatch, invalid, not equivalent);
// 2 usage or parse error; 3 cap exceeded.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zk/bhr.hpp"
#include "zk/complex.hpp"
#include "zk/constructions.hpp"
#include "zk/fingerprint.hpp"
#include "zk/hochster.hpp"
#include "zk/json_io.hpp"
#include "zk/properties.hpp"
#include "zk/taylor.hpp"
#include "zk/toric.hpp"

namespace {

using zk::Json;

struct RunConfig {
    std::string field = "gf2";
    int sweep_cap = 24;
    int taylor_cap = 16;
    int ring_cap = 14;
    long long scc_cap = 1'000'000;
    int threads = 0;
    std::string format = "json";
    std::uint64_t seed = 0;

    zk::FieldTag tag() const { return zk::parse_field(field); }

    Json to_json() const {
        Json j;
        j["field"] = field;
        j["sweep_cap"] = sweep_cap;
        j["taylor_cap"] = taylor_cap;
        j["ring_cap"] = ring_cap;
        j["scc_cap"] = scc_cap;
        j["threads"] = threads;
        j["format"] = format;
        j["seed"] = seed;
        return j;
    }
};

void add_config_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--field", cfg.field, "coefficient field: gf2|gf3|gf5|q");
    cmd->add_option("--sweep-cap", cfg.sweep_cap, "vertex cap for the 2^m subset sweep");
    cmd->add_option("--taylor-cap", cfg.taylor_cap, "cap on |MF(K)| for the Taylor oracle");
    cmd->add_option("--ring-cap", cfg.ring_cap, "vertex cap for nil/socle computations");
    cmd->add_option("--scc-cap", cfg.scc_cap, "extension budget per SCC triple");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    cmd->add_option("--format", cfg.format, "output format: json|text");
    cmd->add_option("--seed", cfg.seed, "seed echoed into reports (reserved for harnesses)");
}

zk::Complex read_input(const std::string& path, bool use_stdin) {
    if (use_stdin) {
        Json j;
        try {
            std::cin >> j;
        } catch (const Json::exception& e) {
            throw zk::ParseError(std::string("stdin: ") + e.what());
        }
        return zk::complex_from_json(j);
    }
    if (path.empty()) throw zk::ParseError("no input: pass --in FILE or --stdin");
    return zk::load_complex(path);
}

std::vector<int> parse_vertex_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int v = std::stoi(tok);
        if (v < 1) throw zk::ParseError("vertex list entries are 1-based");
        out.push_back(v - 1);
    }
    return out;
}

std::uint64_t catalog_checksum() {
    // FNV-1a over the canonical facet lists of the named catalog complexes
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const zk::Complex& K) {
        auto mix = [&](std::uint64_t x) {
            h ^= x;
            h *= 1099511628211ULL;
        };
        mix(static_cast<std::uint64_t>(K.m()));
        for (const auto& f : K.facets())
            for (int v : f.vertices()) mix(static_cast<std::uint64_t>(v + 1));
    };
    feed(zk::simplex_boundary(4));
    feed(zk::octahedron());
    feed(zk::icosahedron());
    for (int n = 4; n <= 8; ++n) feed(zk::polygon(n));
    for (int n = 6; n <= 9; ++n) feed(zk::bipyramid(n));
    return h;
}

void emit(const Json& j, const RunConfig& cfg, const std::string& text_alternative = "") {
    if (cfg.format == "text" && !text_alternative.empty())
        std::cout << text_alternative;
    else
        std::cout << j.dump(2) << "\n";
}

int run_betti(const RunConfig& cfg, const std::string& in, bool use_stdin,
              const std::string& oracle, bool multigraded) {
    zk::Complex K = read_input(in, use_stdin);
    zk::SweepOptions opts;
    opts.vertex_cap = cfg.sweep_cap;
    opts.multigraded = multigraded;
    opts.threads = cfg.threads;
    Json out;
    out["config"] = cfg.to_json();
    bool mismatch = false;
    zk::BettiTable table;
    if (oracle == "hochster") {
        table = zk::bigraded_betti(K, cfg.tag(), opts);
    } else if (oracle == "taylor") {
        table = zk::tor_dims_via_taylor(K, cfg.tag(), multigraded, cfg.taylor_cap);
    } else if (oracle == "both") {
        table = zk::bigraded_betti(K, cfg.tag(), opts);
        zk::BettiTable oracle_table =
            zk::tor_dims_via_taylor(K, cfg.tag(), multigraded, cfg.taylor_cap);
        mismatch = !table.same_entries(oracle_table) ||
                   (multigraded && table.multigraded_entries != oracle_table.multigraded_entries);
        out["oracle_agreement"] = !mismatch;
        if (mismatch) out["taylor"] = zk::betti_to_json(oracle_table);
    } else {
        throw zk::ParseError("--oracle must be hochster|taylor|both");
    }
    out["betti"] = zk::betti_to_json(table);
    out["zk_dims"] = zk::ma_cohomology_dims(table);
    out["rzk_dims"] = zk::real_ma_cohomology_dims(table);
    emit(out, cfg, zk::betti_to_text(table));
    return mismatch ? 1 : 0;
}

int run_props(const RunConfig& cfg, const std::string& in, bool use_stdin, bool with_scc) {
    zk::Complex K = read_input(in, use_stdin);
    Json out;
    out["config"] = cfg.to_json();
    out["m"] = K.m();
    out["dim"] = K.dim();
    bool flag = zk::is_flag(K);
    out["flag"] = flag;
    out["no_square"] = zk::has_no_square(K);
    auto susp = zk::suspension_split(K);
    out["suspension"] = susp.has_value();
    if (susp) {
        Json poles = Json::array();
        for (int v : susp->poles.vertices()) poles.push_back(v + 1);
        out["suspension_poles"] = poles;
    }
    bool gor = zk::is_generalized_homology_sphere(K, cfg.tag());
    out["gorenstein_star"] = gor;
    if (gor && flag) {
        auto nsc = zk::satisfies_nsc(K, cfg.tag());
        out["nsc"] = nsc.holds;
    } else {
        out["nsc"] = nullptr;
    }
    bool negative = false;
    if (with_scc && flag && K.m() >= 3 && zk::core(K).simplex_factor == 0) {
        auto scc = zk::satisfies_scc(K, cfg.scc_cap);
        Json s;
        s["verdict"] = zk::to_string(scc.verdict);
        s["cap"] = scc.cap;
        s["triples"] = scc.triples_checked;
        Json fails = Json::array();
        for (const auto& t : scc.failures) {
            Json f;
            Json om = Json::array();
            for (int v : t.omega.vertices()) om.push_back(v + 1);
            f["omega"] = om;
            f["excluded"] = t.excluded + 1;
            fails.push_back(f);
        }
        s["failures"] = fails;
        out["scc"] = s;
        negative = scc.verdict == zk::SccVerdict::Fails;
    } else {
        out["scc"] = nullptr;
    }
    if (K.dim() == 2 && gor)
        out["class_q"] = zk::class_q_membership(K);
    else
        out["class_q"] = nullptr;
    emit(out, cfg);
    return negative ? 1 : 0;
}

template <class F>
std::string coeff_str(const F& x) {
    if constexpr (zk::FieldTraits<F>::is_finite) {
        return std::to_string(x.value());
    } else {
        std::ostringstream os;
        os << x;
        return os.str();
    }
}

int run_product(const RunConfig& cfg, const std::string& in, bool use_stdin,
                const std::vector<std::string>& omegas, bool star) {
    zk::Complex K = read_input(in, use_stdin);
    if (omegas.size() < 2) throw zk::ParseError("product: need at least two --omega lists");
    return zk::with_field(cfg.tag(), [&]<class F>() -> int {
        zk::BhrRing<F> R(K);
        using Elem = typename zk::BhrRing<F>::Element;
        Elem acc;
        bool first = true;
        for (const std::string& s : omegas) {
            auto vs = parse_vertex_list(s);
            Elem w = R.omega_tilde(zk::FaceSet::from_vertices(vs));
            if (first) {
                acc = w;
                first = false;
            } else {
                acc = star ? R.star_product(acc, w) : R.product(acc, w);
            }
        }
        Json out;
        out["config"] = cfg.to_json();
        out["star"] = star;
        out["nonzero"] = !R.is_zero(acc);
        Json terms = Json::array();
        for (const auto& [key, coords] : acc) {
            Json t;
            Json verts = Json::array();
            std::uint32_t m = key.first;
            while (m) {
                verts.push_back(__builtin_ctz(m) + 1);
                m &= m - 1;
            }
            t["J"] = verts;
            t["degree"] = key.second;
            Json cs = Json::array();
            for (const F& c : coords) cs.push_back(coeff_str(c));
            t["coords"] = cs;
            terms.push_back(t);
        }
        out["terms"] = terms;
        emit(out, cfg);
        return R.is_zero(acc) ? 1 : 0;
    });
}

int run_fingerprint(const RunConfig& cfg, const std::string& in, bool use_stdin) {
    zk::Complex K = read_input(in, use_stdin);
    zk::FingerprintOptions opts;
    opts.sweep_cap = cfg.sweep_cap;
    opts.ring_cap = cfg.ring_cap;
    opts.threads = cfg.threads;
    zk::RingFingerprint fp = zk::fingerprint(K, cfg.tag(), opts);
    Json out;
    out["config"] = cfg.to_json();
    out["fingerprint"] = zk::fingerprint_to_json(fp);
    emit(out, cfg);
    return 0;
}

int run_compare(const RunConfig& cfg, const std::string& a, const std::string& b) {
    zk::Complex A = zk::load_complex(a);
    zk::Complex B = zk::load_complex(b);
    zk::FingerprintOptions opts;
    opts.sweep_cap = cfg.sweep_cap;
    opts.ring_cap = cfg.ring_cap;
    opts.threads = cfg.threads;
    zk::RingFingerprint fa = zk::fingerprint(A, cfg.tag(), opts);
    zk::RingFingerprint fb = zk::fingerprint(B, cfg.tag(), opts);
    auto cmp = zk::compare_fingerprints(fa, fb);
    Json out;
    out["config"] = cfg.to_json();
    out["equal"] = cmp.equal;
    out["first_difference"] = cmp.first_difference;
    out["a"] = zk::fingerprint_to_json(fa);
    out["b"] = zk::fingerprint_to_json(fb);
    emit(out, cfg);
    return cmp.equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment-angle complex cohomology and rigidity toolkit"};
    app.require_subcommand(0, 1);
    std::ostringstream version;
    version << "zk 1.0 (catalog checksum " << std::hex << catalog_checksum() << ")";
    app.set_version_flag("--version", version.str());

    RunConfig cfg;
    std::string in_path, a_path, b_path, matrix_path, oracle = "hochster";
    bool use_stdin = false, multigraded = false, star = false, no_scc = false, strict = false;
    bool mod_auts = false;
    std::vector<std::string> omegas;
    std::string name, lattice, polytope, circuit, swap_pair;
    int parameter = 0;

    CLI::App* betti = app.add_subcommand("betti", "bigraded Betti numbers of Tor(K)");
    add_config_flags(betti, cfg);
    betti->add_option("--in", in_path, "complex json file");
    betti->add_flag("--stdin", use_stdin, "read the complex from stdin");
    betti->add_option("--oracle", oracle, "hochster|taylor|both (both cross-checks)");
    betti->add_flag("--multigraded", multigraded, "keep the per-subset refinement");

    CLI::App* props = app.add_subcommand("props", "combinatorial property report");
    add_config_flags(props, cfg);
    props->add_option("--in", in_path, "complex json file");
    props->add_flag("--stdin", use_stdin, "read the complex from stdin");
    props->add_flag("--no-scc", no_scc, "skip the SCC search");

    CLI::App* product = app.add_subcommand("product", "multiply ω̃ classes in the BHR");
    add_config_flags(product, cfg);
    product->add_option("--in", in_path, "complex json file");
    product->add_flag("--stdin", use_stdin, "read the complex from stdin");
    product->add_option("--omega", omegas, "missing pair as 1-based list, e.g. 1,3 (repeatable)");
    product->add_flag("--star", star, "use the ⋆-product (real moment-angle ring)");

    CLI::App* fp = app.add_subcommand("fingerprint", "rigidity fingerprint of Tor(K)");
    add_config_flags(fp, cfg);
    fp->add_option("--in", in_path, "complex json file");
    fp->add_flag("--stdin", use_stdin, "read the complex from stdin");

    CLI::App* compare = app.add_subcommand("compare", "compare two fingerprints");
    add_config_flags(compare, cfg);
    compare->add_option("--a", a_path, "first complex json")->required();
    compare->add_option("--b", b_path, "second complex json")->required();

    CLI::App* construct = app.add_subcommand("construct", "catalog and derived complexes");
    add_config_flags(construct, cfg);
    CLI::App* c_catalog = construct->add_subcommand("catalog", "emit a named catalog complex");
    c_catalog->add_option("--name", name, "simplex-boundary|polygon|path|bipyramid|t4|o6|i12")
        ->required();
    c_catalog->add_option("--param", parameter, "size parameter where applicable");
    CLI::App* c_bary = construct->add_subcommand("barycentric", "barycentric subdivision");
    c_bary->add_option("--in", in_path, "complex json file");
    c_bary->add_flag("--stdin", use_stdin, "read the complex from stdin");
    CLI::App* c_xi1 = construct->add_subcommand("xi1", "cone every face of a 3-polytope boundary");
    c_xi1->add_option("--lattice", lattice, "c8|d20")->required();
    CLI::App* c_xi2 = construct->add_subcommand("xi2", "xi1 plus stellar subdivision of edges");
    c_xi2->add_option("--lattice", lattice, "c8|d20")->required();
    CLI::App* c_ep = construct->add_subcommand("ep", "the sphere E_P over a simplicial boundary");
    c_ep->add_option("--polytope", polytope, "icosahedron|octahedron");
    c_ep->add_option("--in", in_path, "simplicial 2-sphere json (alternative to --polytope)");
    c_ep->add_flag("--stdin", use_stdin, "read the boundary from stdin");
    CLI::App* c_puzzle = construct->add_subcommand("puzzle", "puzzle-move along a 4-circuit");
    c_puzzle->add_option("--in", in_path, "complex json file");
    c_puzzle->add_flag("--stdin", use_stdin, "read the complex from stdin");
    c_puzzle->add_option("--circuit", circuit, "induced 4-circuit, cyclic order, e.g. 1,5,2,9")
        ->required();
    c_puzzle->add_option("--swap", swap_pair, "diagonal to swap, e.g. 1,2")->required();
    CLI::App* c_join = construct->add_subcommand("join", "join of two complexes");
    c_join->add_option("--a", a_path, "first complex json")->required();
    c_join->add_option("--b", b_path, "second complex json")->required();
    CLI::App* c_sum = construct->add_subcommand("connected-sum",
                                                "all connected sums up to isomorphism");
    c_sum->add_option("--a", a_path, "first complex json")->required();
    c_sum->add_option("--b", b_path, "second complex json")->required();

    CLI::App* toric = app.add_subcommand("toric", "characteristic matrix checks");
    add_config_flags(toric, cfg);
    CLI::App* t_val = toric->add_subcommand("validate", "facet determinant condition");
    t_val->add_option("--in", in_path, "complex json file")->required();
    t_val->add_option("--matrix", matrix_path, "characteristic matrix json")->required();
    t_val->add_flag("--strict", strict, "check unimodularity on every face");
    CLI::App* t_ranks = toric->add_subcommand("ranks", "graded ranks of Z[K]/J (= h-vector)");
    t_ranks->add_option("--in", in_path, "complex json file")->required();
    t_ranks->add_option("--matrix", matrix_path, "characteristic matrix json")->required();
    CLI::App* t_equiv = toric->add_subcommand("equiv", "weak equivalence of two matrices");
    t_equiv->add_option("--in", in_path, "complex json file")->required();
    t_equiv->add_option("--a", a_path, "first matrix json")->required();
    t_equiv->add_option("--b", b_path, "second matrix json")->required();
    t_equiv->add_flag("--mod-automorphisms", mod_auts, "quotient by Aut(K)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (betti->parsed()) return run_betti(cfg, in_path, use_stdin, oracle, multigraded);
        if (props->parsed()) return run_props(cfg, in_path, use_stdin, !no_scc);
        if (product->parsed()) return run_product(cfg, in_path, use_stdin, omegas, star);
        if (fp->parsed()) return run_fingerprint(cfg, in_path, use_stdin);
        if (compare->parsed()) return run_compare(cfg, a_path, b_path);
        if (construct->parsed()) {
            zk::Complex out;
            if (c_catalog->parsed()) {
                out = zk::catalog(name, parameter);
            } else if (c_bary->parsed()) {
                out = zk::barycentric_subdivision(read_input(in_path, use_stdin)).complex;
            } else if (c_xi1->parsed()) {
                out = zk::xi1(zk::catalog_lattice(lattice));
            } else if (c_xi2->parsed()) {
                out = zk::xi2(zk::catalog_lattice(lattice));
            } else if (c_ep->parsed()) {
                if (!polytope.empty()) {
                    if (polytope == "icosahedron")
                        out = zk::construct_EP(zk::icosahedron());
                    else if (polytope == "octahedron")
                        out = zk::construct_EP(zk::octahedron());
                    else
                        throw zk::ParseError("ep: --polytope must be icosahedron|octahedron");
                } else {
                    out = zk::construct_EP(read_input(in_path, use_stdin));
                }
            } else if (c_puzzle->parsed()) {
                zk::Complex K = read_input(in_path, use_stdin);
                auto cyc = parse_vertex_list(circuit);
                if (cyc.size() != 4) throw zk::ParseError("puzzle: --circuit needs 4 vertices");
                auto fc = zk::induced_four_circuit_on(K, cyc[0], cyc[1], cyc[2], cyc[3]);
                if (!fc) throw zk::PreconditionError("puzzle: vertices do not induce a 4-circuit");
                auto sw = parse_vertex_list(swap_pair);
                if (sw.size() != 2) throw zk::ParseError("puzzle: --swap needs 2 vertices");
                zk::FaceSet W = zk::FaceSet::from_vertices(sw);
                zk::FaceSet Gamma;
                if (W == fc->diagonal1)
                    Gamma = fc->diagonal2;
                else if (W == fc->diagonal2)
                    Gamma = fc->diagonal1;
                else
                    throw zk::PreconditionError("puzzle: --swap must be a diagonal of the circuit");
                out = zk::puzzle_move(K, zk::swap_spec(K, W, Gamma, sw[0], sw[1]));
            } else if (c_join->parsed()) {
                out = zk::join(zk::load_complex(a_path), zk::load_complex(b_path));
            } else if (c_sum->parsed()) {
                auto classes =
                    zk::connected_sum_enumerate(zk::load_complex(a_path), zk::load_complex(b_path));
                Json arr = Json::array();
                for (const auto& c : classes) arr.push_back(zk::complex_to_json(c));
                Json j;
                j["config"] = cfg.to_json();
                j["classes"] = arr;
                std::cout << j.dump(2) << "\n";
                return 0;
            } else {
                throw zk::ParseError("construct: pick a subcommand");
            }
            std::cout << zk::complex_to_json(out).dump(2) << "\n";
            return 0;
        }
        if (toric->parsed()) {
            zk::Complex K = zk::load_complex(in_path);
            Json out;
            out["config"] = cfg.to_json();
            if (t_val->parsed()) {
                auto v = zk::validate_characteristic(K, zk::load_char_matrix(matrix_path), strict);
                out["valid"] = v.valid;
                if (v.failing_face) {
                    Json f = Json::array();
                    for (int x : v.failing_face->vertices()) f.push_back(x + 1);
                    out["failing_face"] = f;
                }
                std::cout << out.dump(2) << "\n";
                return v.valid ? 0 : 1;
            }
            if (t_ranks->parsed()) {
                auto ranks = zk::quotient_ring_ranks(K, zk::load_char_matrix(matrix_path));
                out["ranks"] = ranks;
                out["h_vector"] = zk::h_vector(K);
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            if (t_equiv->parsed()) {
                auto L1 = zk::load_char_matrix(a_path);
                auto L2 = zk::load_char_matrix(b_path);
                auto r = mod_auts ? zk::weak_equivalence_mod_automorphisms(K, L1, L2)
                                  : zk::weak_equivalence(K, L1, L2);
                out["equivalent"] = r.equivalent;
                if (r.equivalent) {
                    out["A"] = r.A;
                    out["B"] = r.B;
                }
                std::cout << out.dump(2) << "\n";
                return r.equivalent ? 0 : 1;
            }
            throw zk::ParseError("toric: pick a subcommand (validate|ranks|equiv)");
        }
        std::cout << app.help();
        return 0;
    } catch (const zk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const zk::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const zk::PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
