// Command-line front end: classify, verify, homogenize, search, batch.
// Exit codes: 0 verdict or success, 1 verification-negative, 2 input error.
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbrigid/classify.hpp"
#include "pbrigid/grading.hpp"
#include "pbrigid/io.hpp"
#include "pbrigid/search.hpp"

namespace {

using namespace pbrigid;

constexpr std::uint64_t kMaxExponent = 1000000;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        fail(Errc::parse_error, std::string(what) + " is not an unsigned integer: '" + s + "'");
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
    if (errno == ERANGE) fail(Errc::exponent_overflow, std::string(what) + " overflows: " + s);
    return v;
}

std::vector<std::uint64_t> parse_exponent_tuple(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (const auto& part : split(s, ',')) {
        const std::uint64_t v = parse_u64(part, "tuple entry");
        if (v == 0 || v > kMaxExponent)
            fail(Errc::invalid_tuple, "tuple entry out of range [1, 10^6]: " + part);
        out.push_back(v);
    }
    if (out.empty()) fail(Errc::invalid_tuple, "empty tuple");
    return out;
}

std::optional<bool> parse_yes_no(const std::string& s, const char* what) {
    if (s.empty()) return std::nullopt;
    if (s == "yes") return true;
    if (s == "no") return false;
    fail(Errc::parse_error, std::string(what) + " must be yes or no, got '" + s + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::parse_error, "cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::parse_error, "cannot write file: " + path);
    out << content;
}

std::string tuple_text(const std::vector<std::uint64_t>& tuple) {
    std::string s = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(tuple[i]);
    }
    return s + ")";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct ClassifyArgs {
    std::string tuple;
    std::uint64_t characteristic = 0;
    bool alg_closed = false;
    std::string sqrt_minus_one;
    bool json = false;
    std::string witness_path;
};

int run_classify(const ClassifyArgs& a) {
    const auto tuple = parse_exponent_tuple(a.tuple);
    const auto field = make_field(a.characteristic, a.alg_closed,
                                  parse_yes_no(a.sqrt_minus_one, "--sqrt-minus-one"));
    const Verdict v = classify(field, tuple);
    if (!a.witness_path.empty()) {
        if (v.witness)
            write_file(a.witness_path, map_to_json(*v.witness));
        else
            std::cerr << "note: no witness map is available for this verdict; nothing written\n";
    }
    if (a.json) {
        std::cout << verdict_to_json(v);
        return 0;
    }
    std::cout << "tuple: " << tuple_text(v.tuple) << "\n";
    std::cout << "characteristic: " << v.field.characteristic << "\n";
    std::cout << "algebraically closed: " << yes_no(v.field.algebraically_closed) << "\n";
    std::cout << "sqrt(-1): " << yes_no(v.field.sqrt_minus_one) << "\n";
    std::cout << "status: " << status_name(v.status) << "\n";
    std::cout << "rule: " << v.rule << "\n";
    std::cout << "citation: " << v.citation << "\n";
    if (v.witness) {
        std::cout << "witness: verified nontrivial exponential map";
        if (!a.witness_path.empty()) std::cout << " (written to " << a.witness_path << ")";
        std::cout << "\n";
    }
    for (const auto& note : v.notes) std::cout << "note: " << note << "\n";
    return 0;
}

struct VerifyArgs {
    std::string ring_path;
    std::string map_path;
    bool extended = false;
};

int run_verify(const VerifyArgs& a) {
    const PresPtr pres = ring_from_json(read_file(a.ring_path));
    const ExpMap map = map_from_json(read_file(a.map_path));
    if (!map.presentation()->same_presentation(*pres))
        fail(Errc::presentation_mismatch, "map file presentation does not match the ring file");

    const VerifyReport& rep = map.verify();
    if (!rep.ok) {
        std::cout << "FAIL: axiom " << axiom_name(*rep.failed_axiom) << "\n";
        std::cout << "identity: " << rep.detail << "\n";
        return 1;
    }
    std::cout << "OK: well-definedness, counit, comultiplication hold\n";
    std::cout << "trivial: " << yes_no(is_trivial(map)) << "\n";
    if (a.extended) {
        const auto& field = pres->field();
        const std::size_t n = pres->nvars();
        std::vector<Poly> sample;
        for (std::size_t i = 0; i < n; ++i) sample.push_back(Poly::variable(field, n, i));
        sample.push_back(Poly::variable(field, n, 0) + Poly::variable(field, n, 1));
        sample.push_back(Poly::variable(field, n, 0) * Poly::variable(field, n, n - 1));
        const ExtendedReport ext = verify_extended(map, sample);
        if (!ext.ok) {
            std::cout << "FAIL: derived identity: " << ext.first_violation << "\n";
            return 1;
        }
        std::cout << "extended: " << ext.identities_checked << " derived identities hold\n";
    }
    return 0;
}

struct HomogenizeArgs {
    std::string ring_path;
    std::string map_path;
    std::string weights;
};

int run_homogenize(const HomogenizeArgs& a) {
    const PresPtr pres = ring_from_json(read_file(a.ring_path));
    const ExpMap map = map_from_json(read_file(a.map_path));
    if (!map.presentation()->same_presentation(*pres))
        fail(Errc::presentation_mismatch, "map file presentation does not match the ring file");
    if (!map.verify().ok)
        fail(Errc::unverified_map,
             "input map fails axiom " + std::string(axiom_name(*map.verify().failed_axiom)));

    WeightVector w;
    if (a.weights == "standard") {
        w = standard_grading(pres);
    } else {
        for (const auto& part : split(a.weights, ','))
            w.weights.push_back(static_cast<long long>(parse_u64(part, "weight")));
        if (w.weights.size() != pres->nvars())
            fail(Errc::arity_mismatch, "expected " + std::to_string(pres->nvars()) + " weights");
    }

    const HomogenizationReport rep = homogenize_map(map, w);
    if (rep.outcome == HomogenizeOutcome::candidate_verification_failed) {
        std::cerr << "FAIL: homogenized candidate breaks axiom "
                  << axiom_name(*rep.failure.failed_axiom) << "\n";
        std::cerr << "identity: " << rep.failure.detail << "\n";
        std::cerr << "slope: " << rep.slope.get_str() << "\n";
        return 1;
    }
    std::cerr << (rep.outcome == HomogenizeOutcome::already_homogeneous
                      ? "input map is already homogeneous"
                      : "homogenized candidate verified")
              << "; slope " << rep.slope.get_str() << "\n";
    std::cout << map_to_json(*rep.result);
    return 0;
}

struct SearchArgs {
    std::string ring_path;
    std::string tuple;
    std::uint64_t characteristic = 0;
    bool char_given = false;
    std::uint64_t max_udeg = 1;
    std::uint64_t max_deg = 1;
    std::string mask;
    std::uint64_t ceiling = std::uint64_t(1) << 32;
};

int run_search(const SearchArgs& a) {
    PresPtr pres;
    if (!a.ring_path.empty()) {
        pres = ring_from_json(read_file(a.ring_path));
        if (a.char_given && a.characteristic != pres->field().characteristic)
            fail(Errc::field_mismatch, "--char does not match the ring file");
    } else {
        if (a.tuple.empty() || !a.char_given)
            fail(Errc::parse_error, "need --ring, or --tuple together with --char");
        pres = RingPresentation::pham_brieskorn(make_field(a.characteristic),
                                                parse_exponent_tuple(a.tuple));
    }

    SearchBounds bounds;
    bounds.max_u_degree = a.max_udeg;
    bounds.max_total_degree = a.max_deg;
    bounds.ceiling = a.ceiling;
    if (!a.mask.empty()) {
        std::vector<std::size_t> mask;
        for (const auto& part : split(a.mask, ',')) {
            const std::uint64_t v = parse_u64(part, "mask index");
            if (v == 0 || v > pres->nvars())
                fail(Errc::arity_mismatch, "mask index out of range [1, " +
                                               std::to_string(pres->nvars()) + "]: " + part);
            mask.push_back(static_cast<std::size_t>(v - 1));
        }
        bounds.variable_mask = mask;
    }
    bounds.progress = [](std::uint64_t candidates, std::uint64_t found) {
        std::cerr << "progress: " << candidates << " candidates explored, " << found
                  << " maps found\n";
    };

    const SearchOutcome out = enumerate_maps(pres, bounds);
    for (const ExpMap& map : out.maps) std::cout << map_to_json(map);
    std::cerr << "summary: " << out.candidates << " candidates explored, rank " << out.rank
              << " of " << out.unknowns << " unknowns per layer, " << out.maps.size()
              << " verified nontrivial maps\n";
    return 0;
}

struct BatchArgs {
    std::string ranges;
    std::string chars;
    bool alg_closed = false;
    std::string sqrt_minus_one;
    std::string format = "tsv";
    std::uint64_t limit = 1000000;
};

struct Range {
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;  // lo > hi means empty
};

int run_batch(const BatchArgs& a) {
    std::vector<Range> ranges;
    for (const auto& part : split(a.ranges, ',')) {
        Range r;
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            r.lo = r.hi = parse_u64(part, "range");
        } else {
            r.lo = parse_u64(part.substr(0, dots), "range low end");
            r.hi = parse_u64(part.substr(dots + 2), "range high end");
        }
        if (r.lo == 0 || std::max(r.lo, r.hi) > kMaxExponent)
            fail(Errc::invalid_tuple, "range out of [1, 10^6]: " + part);
        ranges.push_back(r);
    }
    if (ranges.size() < 3 || ranges.size() > 4)
        fail(Errc::invalid_tuple, "expected 3 or 4 ranges, got " + std::to_string(ranges.size()));

    const auto declared_sqrt = parse_yes_no(a.sqrt_minus_one, "--sqrt-minus-one");
    std::vector<std::uint64_t> chars;
    for (const auto& part : split(a.chars, ','))
        chars.push_back(parse_u64(part, "characteristic"));
    std::sort(chars.begin(), chars.end());
    chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
    if (chars.empty()) fail(Errc::invalid_characteristic, "empty characteristic list");
    std::vector<FieldSpec> fields;
    for (std::uint64_t p : chars) fields.push_back(make_field(p, a.alg_closed, declared_sqrt));

    mpz_class rows = static_cast<unsigned long>(chars.size());
    for (const Range& r : ranges)
        rows *= (r.hi >= r.lo) ? mpz_class(static_cast<unsigned long>(r.hi - r.lo + 1))
                               : mpz_class(0);
    if (rows > mpz_class(static_cast<unsigned long>(a.limit)))
        fail(Errc::search_space_too_large,
             "table would have " + rows.get_str() + " rows; raise --limit to allow");

    const bool tsv = a.format == "tsv";
    nlohmann::ordered_json json_rows = nlohmann::ordered_json::array();
    if (tsv) std::cout << "tuple\tchar\talg_closed\tsqrt_minus_one\tstatus\trule\n";

    std::vector<std::uint64_t> tuple;
    std::function<void(std::size_t)> walk = [&](std::size_t idx) {
        if (idx == ranges.size()) {
            for (const FieldSpec& field : fields) {
                const Verdict v = classify(field, tuple);
                if (tsv) {
                    for (std::size_t i = 0; i < tuple.size(); ++i)
                        std::cout << (i ? "," : "") << tuple[i];
                    std::cout << '\t' << field.characteristic << '\t'
                              << (field.algebraically_closed ? "true" : "false") << '\t'
                              << (field.sqrt_minus_one ? "true" : "false") << '\t'
                              << status_name(v.status) << '\t' << v.rule << '\n';
                } else {
                    nlohmann::ordered_json row;
                    row["tuple"] = tuple;
                    row["char"] = field.characteristic;
                    row["traits"] = {{"algebraically_closed", field.algebraically_closed},
                                     {"sqrt_minus_one", field.sqrt_minus_one}};
                    row["status"] = status_name(v.status);
                    row["rule"] = v.rule;
                    json_rows.push_back(std::move(row));
                }
            }
            return;
        }
        for (std::uint64_t v = ranges[idx].lo; v <= ranges[idx].hi; ++v) {
            tuple.push_back(v);
            walk(idx + 1);
            tuple.pop_back();
        }
    };
    walk(0);

    if (!tsv) std::cout << json_rows.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rigidity classifier for diagonal hypersurface rings"};
    app.require_subcommand(1);

    ClassifyArgs ca;
    auto* classify_cmd =
        app.add_subcommand("classify", "classify a ring by its exponent tuple and field");
    classify_cmd->add_option("--tuple", ca.tuple, "comma-separated exponents, e.g. 2,3,4")
        ->required();
    classify_cmd->add_option("--char", ca.characteristic, "field characteristic, 0 or a prime")
        ->required();
    classify_cmd->add_flag("--alg-closed", ca.alg_closed, "assume an algebraically closed field");
    classify_cmd
        ->add_option("--sqrt-minus-one", ca.sqrt_minus_one, "declare whether -1 is a square")
        ->check(CLI::IsMember({"yes", "no"}));
    classify_cmd->add_flag("--json", ca.json, "print the verdict as JSON");
    classify_cmd->add_option("--witness", ca.witness_path,
                             "write the witness map here when one exists");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "check the exponential map axioms on a file");
    verify_cmd->add_option("--ring", va.ring_path, "ring presentation file")->required();
    verify_cmd->add_option("--map", va.map_path, "candidate map file")->required();
    verify_cmd->add_flag("--extended", va.extended, "also replay derived identities on samples");

    HomogenizeArgs ha;
    auto* homog_cmd =
        app.add_subcommand("homogenize", "extract the isobaric part of a verified map");
    homog_cmd->add_option("--ring", ha.ring_path, "ring presentation file")->required();
    homog_cmd->add_option("--map", ha.map_path, "verified map file")->required();
    homog_cmd
        ->add_option("--weights", ha.weights, "'standard' or comma-separated positive weights")
        ->required();

    SearchArgs sa;
    auto* search_cmd =
        app.add_subcommand("search", "enumerate exponential maps within shape bounds");
    search_cmd->add_option("--ring", sa.ring_path, "ring presentation file");
    search_cmd->add_option("--tuple", sa.tuple, "exponent tuple (alternative to --ring)");
    auto* char_opt =
        search_cmd->add_option("--char", sa.characteristic, "field characteristic, a prime");
    search_cmd->add_option("--max-udeg", sa.max_udeg, "highest U power in any image")->required();
    search_cmd
        ->add_option("--max-deg", sa.max_deg, "total degree cap for each U-coefficient")
        ->required();
    search_cmd->add_option("--mask", sa.mask, "1-based generator indices allowed to move");
    search_cmd->add_option("--ceiling", sa.ceiling,
                           "refuse searches whose branch bound exceeds this");

    BatchArgs ba;
    auto* batch_cmd = app.add_subcommand("batch", "classification table over tuple ranges");
    batch_cmd
        ->add_option("--ranges", ba.ranges, "3 or 4 comma-separated ranges, e.g. 2..9,2..9,2..9")
        ->required();
    batch_cmd->add_option("--chars", ba.chars, "comma-separated characteristics")->required();
    batch_cmd->add_flag("--alg-closed", ba.alg_closed, "assume algebraically closed fields");
    batch_cmd
        ->add_option("--sqrt-minus-one", ba.sqrt_minus_one, "declare whether -1 is a square")
        ->check(CLI::IsMember({"yes", "no"}));
    batch_cmd->add_option("--format", ba.format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));
    batch_cmd->add_option("--limit", ba.limit, "largest allowed row count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    sa.char_given = char_opt->count() > 0;

    try {
        if (app.got_subcommand(classify_cmd)) return run_classify(ca);
        if (app.got_subcommand(verify_cmd)) return run_verify(va);
        if (app.got_subcommand(homog_cmd)) return run_homogenize(ha);
        if (app.got_subcommand(search_cmd)) return run_search(sa);
        if (app.got_subcommand(batch_cmd)) return run_batch(ba);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
