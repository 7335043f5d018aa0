// Command-line front door: exact Stirling / valuation tables, ideal
// generators and membership, symbolic annihilation checks in B/2^rB, and
// concrete verification over the finite model Witt rings.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <annpoly/annihilator_ideals.hpp>
#include <annpoly/pfister_algebra.hpp>
#include <annpoly/polynomial.hpp>
#include <annpoly/stirling.hpp>
#include <annpoly/valuation.hpp>
#include <annpoly/witt_models.hpp>

namespace {

using namespace annpoly;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int emit_check(const CheckReport& rep, const std::string& format) {
    if (format == "json") {
        std::cout << check_report_to_json(rep).dump(2) << "\n";
    } else {
        std::cout << rep.name << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
        if (rep.counterexample) {
            std::cout << "counterexample: poly=" << rep.counterexample->poly
                      << " n=" << rep.counterexample->n << " r=" << rep.counterexample->r << " ("
                      << rep.counterexample->note << ")\n";
        }
    }
    return rep.pass ? kExitPass : kExitFail;
}

Family parse_family(const std::string& s, unsigned& exact_dim) {
    if (s == "all") return Family::All;
    if (s == "even") return Family::Even;
    if (s == "odd") return Family::Odd;
    if (s == "torsion") return Family::Torsion;
    if (s.rfind("dim=", 0) == 0) {
        exact_dim = static_cast<unsigned>(std::stoul(s.substr(4)));
        return Family::ExactDim;
    }
    throw CLI::ValidationError("--family", "expected all|even|odd|torsion|dim=N");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations around Stirling numbers, the Pfister generator "
                 "algebra and Witt ring annihilator ideals"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string format = "text";
    app.add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();

    // stirling
    unsigned long st_n = 0, st_k = 0;
    std::string st_formula = "rec";
    auto* c_stirling = app.add_subcommand("stirling", "S(n,k), second kind");
    c_stirling->add_option("--n", st_n)->required();
    c_stirling->add_option("--k", st_k)->required();
    c_stirling->add_option("--formula", st_formula, "rec|alt|comp")
            ->check(CLI::IsMember({"rec", "alt", "comp"}));

    // scan-bound
    unsigned long sb_max = 64;
    auto* c_scan = app.add_subcommand("scan-bound", "Margins of nu2(S(n,k)) >= d(k)-d(n)");
    c_scan->add_option("--max-n", sb_max)->required();

    // k-of-r
    unsigned long kr_r = 0;
    auto* c_kr = app.add_subcommand("k-of-r", "k with nu2((2k-2)!) < r <= nu2((2k)!)");
    c_kr->add_option("--r", kr_r)->required();

    // generators
    std::string gen_ideal;
    unsigned long gen_r = 0;
    auto* c_gen = app.add_subcommand("generators", "Generator list of an annihilator ideal");
    c_gen->add_option("--ideal", gen_ideal, "jprime-e|j-e|j-o|j-full")->required();
    c_gen->add_option("--r", gen_r)->required();

    // member
    std::string mem_ideal, mem_poly;
    unsigned long mem_r = 0;
    auto* c_mem = app.add_subcommand("member", "Ideal membership test");
    c_mem->add_option("--ideal", mem_ideal)->required();
    c_mem->add_option("--r", mem_r)->required();
    c_mem->add_option("--poly", mem_poly)->required();

    // expand
    std::string ex_poly;
    unsigned long ex_n = 0, ex_shift_dim = 0;
    auto* c_exp = app.add_subcommand("expand", "A_p coefficients of f at a generator sum");
    c_exp->add_option("--poly", ex_poly)->required();
    auto* opt_ex_n = c_exp->add_option("--n", ex_n, "rank, unshifted evaluation");
    auto* opt_ex_sh = c_exp->add_option("--shift-dim", ex_shift_dim,
                                        "dimension n for evaluation at (sum Y_i) - n");
    opt_ex_n->excludes(opt_ex_sh);

    // annihilate-check
    std::string ac_poly;
    unsigned long ac_r = 0, ac_max_n = 6;
    auto* c_ann = app.add_subcommand("annihilate-check", "f = 0 in B/2^rB at all generator sums");
    c_ann->add_option("--poly", ac_poly)->required();
    c_ann->add_option("--r", ac_r)->required();
    c_ann->add_option("--max-n", ac_max_n)->capture_default_str();

    // lemma32-check
    unsigned long l32_r = 0, l32_max_n = 12;
    auto* c_l32 = app.add_subcommand("lemma32-check", "J'_{e,r} generators annihilate symbolically");
    c_l32->add_option("--r", l32_r)->required();
    c_l32->add_option("--max-n", l32_max_n)->capture_default_str();

    // theorem-check
    unsigned long th_r = 0, th_trials = 500;
    std::uint64_t th_seed = 0;
    auto* c_thm = app.add_subcommand("theorem-check", "Annihilation <=> membership, random trials");
    c_thm->add_option("--r", th_r)->required();
    c_thm->add_option("--trials", th_trials)->capture_default_str();
    c_thm->add_option("--seed", th_seed)->capture_default_str();

    // ql-check
    unsigned long ql_l = 0, ql_max_n = 12;
    auto* c_ql = app.add_subcommand("ql-check", "Coefficient-wise criterion for q_l");
    c_ql->add_option("--l", ql_l)->required();
    c_ql->add_option("--max-n", ql_max_n)->capture_default_str();

    // lewis / ql
    unsigned long lw_n = 0, qp_l = 0;
    auto* c_lewis = app.add_subcommand("lewis", "Lewis polynomial p_n");
    c_lewis->add_option("--n", lw_n)->required();
    auto* c_qpoly = app.add_subcommand("ql", "q_l(X) = X(X-2)...(X-2(l-1))");
    c_qpoly->add_option("--l", qp_l)->required();

    // witt-verify
    std::string wv_field, wv_family = "all", wv_poly;
    unsigned long wv_dim_cap = 4;
    auto* c_wv = app.add_subcommand("witt-verify", "Evaluate f on model Witt classes");
    c_wv->add_option("--field", wv_field, "f3|f5|f7|f9|c|r")->required();
    c_wv->add_option("--family", wv_family, "all|even|odd|torsion|dim=N")->capture_default_str();
    c_wv->add_option("--poly", wv_poly)->required();
    c_wv->add_option("--dim-cap", wv_dim_cap)->capture_default_str();

    // comax-witness
    unsigned long cw_k = 0;
    auto* c_cw = app.add_subcommand("comax-witness", "u X^{2k} + v (X-1)^{2k} = 1");
    c_cw->add_option("--k", cw_k)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_stirling) {
            mpz_class s = st_formula == "alt"    ? stirling2_alt_sum(st_n, st_k)
                          : st_formula == "comp" ? stirling2_compositions(st_n, st_k)
                                                 : stirling2(st_n, st_k);
            if (format == "json")
                std::cout << json{{"n", st_n}, {"k", st_k}, {"S", s.get_str()}}.dump() << "\n";
            else
                std::cout << s.get_str() << "\n";
            return kExitPass;
        }
        if (*c_scan) {
            BoundReport rep = scan_bound(sb_max);
            if (format == "csv")
                std::cout << bound_report_to_csv(rep);
            else if (format == "json")
                std::cout << bound_report_to_json(rep).dump() << "\n";
            else
                std::cout << "rows=" << rep.rows.size() << " tight=" << rep.tight_count
                          << " all_nonnegative=" << (rep.all_nonnegative ? "true" : "false")
                          << "\n";
            return rep.all_nonnegative ? kExitPass : kExitFail;
        }
        if (*c_kr) {
            std::cout << k_of_r(kr_r) << "\n";
            return kExitPass;
        }
        if (*c_gen) {
            IdealSpec spec = generators(ideal_kind_from_name(gen_ideal), gen_r);
            std::vector<IntPoly> polys = spec.polynomials();
            if (format == "json") {
                json arr = json::array();
                for (const IntPoly& p : polys) arr.push_back(format_polynomial(p));
                std::cout << json{{"ideal", gen_ideal}, {"r", spec.r}, {"k", spec.k},
                                  {"generators", arr}}
                                     .dump()
                          << "\n";
            } else {
                for (std::size_t i = 0; i < polys.size(); ++i)
                    std::cout << (i ? ", " : "") << format_polynomial(polys[i]);
                std::cout << "\n";
            }
            return kExitPass;
        }
        if (*c_mem) {
            bool in = is_member(parse_polynomial(mem_poly), ideal_kind_from_name(mem_ideal),
                                mem_r);
            if (format == "json")
                std::cout << json{{"ideal", mem_ideal}, {"r", mem_r}, {"poly", mem_poly},
                                  {"member", in}}
                                     .dump()
                          << "\n";
            else
                std::cout << (in ? "member" : "not a member") << "\n";
            return in ? kExitPass : kExitFail;
        }
        if (*c_exp) {
            if (opt_ex_n->count() == 0 && opt_ex_sh->count() == 0)
                throw CLI::RequiredError("expand: one of --n / --shift-dim");
            IntPoly f = parse_polynomial(ex_poly);
            bool shifted = opt_ex_sh->count() > 0;
            unsigned rank = static_cast<unsigned>(shifted ? ex_shift_dim : ex_n);
            ExpansionCoefficients e = shifted ? shifted_expansion_coefficients(f, rank)
                                             : expansion_coefficients(f, rank);
            if (format == "json") {
                std::cout << expansion_to_json(e).dump() << "\n";
            } else {
                for (unsigned p = 0; p <= e.n; ++p)
                    std::cout << "A_" << p << " = " << e.A[p].get_str() << "\n";
            }
            return kExitPass;
        }
        if (*c_ann) {
            bool pass = generic_annihilation_test(parse_polynomial(ac_poly), ac_r,
                                                  static_cast<unsigned>(ac_max_n));
            CheckReport rep{"annihilate", {{"r", ac_r}, {"max_n", ac_max_n}, {"poly", ac_poly}},
                            pass, std::nullopt};
            return emit_check(rep, format);
        }
        if (*c_l32) return emit_check(lemma_32_check(l32_r, static_cast<unsigned>(l32_max_n)),
                                      format);
        if (*c_thm) return emit_check(theorem_equivalence_check(th_r, th_trials, th_seed), format);
        if (*c_ql) return emit_check(ql_sufficient_check(ql_l, static_cast<unsigned>(ql_max_n)),
                                     format);
        if (*c_lewis) {
            std::cout << format_polynomial(lewis_polynomial(lw_n)) << "\n";
            return kExitPass;
        }
        if (*c_qpoly) {
            std::cout << format_polynomial(q_polynomial(qp_l)) << "\n";
            return kExitPass;
        }
        if (*c_wv) {
            unsigned exact_dim = 0;
            Family fam = parse_family(wv_family, exact_dim);
            FieldModel model(field_kind_from_name(wv_field));
            AnnihilationReport rep =
                    verify_annihilation(parse_polynomial(wv_poly), model, fam,
                                        static_cast<unsigned>(wv_dim_cap), exact_dim);
            if (format == "json")
                std::cout << annihilation_report_to_json(rep).dump() << "\n";
            else if (format == "csv")
                std::cout << annihilation_report_to_csv(rep);
            else {
                std::cout << "model=" << rep.model << " family=" << rep.family
                          << " classes=" << rep.classes_checked << " "
                          << (rep.pass ? "pass" : "FAIL") << "\n";
                if (rep.counterexample)
                    std::cout << "counterexample class: " << *rep.counterexample << "\n";
            }
            return rep.pass ? kExitPass : kExitFail;
        }
        if (*c_cw) {
            auto [u, v] = comaximality_witness(cw_k);
            if (format == "json")
                std::cout << json{{"k", cw_k}, {"u", format_polynomial(u)},
                                  {"v", format_polynomial(v)}}
                                     .dump()
                          << "\n";
            else
                std::cout << "u = " << format_polynomial(u) << "\nv = " << format_polynomial(v)
                          << "\n";
            return kExitPass;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
