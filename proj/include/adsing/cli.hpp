/**
 * Command dispatch for the adsing tool.  Each command reads its inputs,
 * calls the library and formats the result; exit codes are 0 (including
 * reports with FAIL lines), 1 for unreadable input, 2 for invalid input and
 * 3 when a constraint system exceeds its bound.
 */
#ifndef ADSING_CLI_HPP
#define ADSING_CLI_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ball_complex.hpp"
#include "io.hpp"
#include "koszul.hpp"
#include "products.hpp"
#include "singular/bordism.hpp"
#include "singular/exact_sequence.hpp"
#include "singular/koszul_comparison.hpp"

namespace adsing
{

enum ExitCode
{
    exit_ok = 0,
    exit_parse = 1,
    exit_validation = 2,
    exit_overflow = 3
};

struct RunConfig
{
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::string> ring;      ///< modulus as text
    std::optional<std::string> sequence;  ///< "2,3", "empty", ""
    std::optional<std::string> window;    ///< "lo..hi"
    std::optional<std::string> config;    ///< JSON config path
    std::optional<int> n;
    int stage = 1;
    std::string output;  ///< JSON output path for product / symmetrize
    int verbosity = 0;
};

struct RunResult
{
    int exit_code = exit_ok;
    std::string report;
    std::string error;
};

inline const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {"validate", "homology", "bordism",    "koszul", "exactness",
                                                   "product",  "symmetrize", "compare", "stage"};
    return names;
}

namespace cli_detail
{

class Failure : public std::runtime_error
{
public:
    Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

struct Resolved
{
    RingSpec ring;
    SingularitySequence sequence;
    int lo = -1, hi = 4;
};

inline Resolved resolve(const RunConfig& c)
{
    Resolved r;
    if (c.config)
    {
        SingularityConfig f = config_from_json(io::read_json_file(*c.config));
        if (f.ring)
            r.ring = *f.ring;
        if (f.sequence)
            r.sequence = *f.sequence;
        if (f.window)
            std::tie(r.lo, r.hi) = *f.window;
    }
    if (c.ring)
    {
        Integer m;
        if (m.set_str(*c.ring, 10) != 0 || m < 0)
            throw ParseError("--ring expects a nonnegative modulus, got \"" + *c.ring + "\"");
        r.ring = RingSpec{m};
    }
    if (c.sequence)
    {
        try
        {
            r.sequence = SingularitySequence::parse(*c.sequence);
        }
        catch (const std::invalid_argument& e)
        {
            throw ParseError(e.what());
        }
    }
    if (c.window)
        std::tie(r.lo, r.hi) = parse_window(*c.window);
    if (r.lo > r.hi)
        throw ParseError("empty degree window " + std::to_string(r.lo) + ".." + std::to_string(r.hi));
    return r;
}

inline std::string header(const std::string& what, const Resolved& r)
{
    return what + " over " + r.ring.to_string() + ", S = " + r.sequence.to_string() + ", window " +
           std::to_string(r.lo) + ".." + std::to_string(r.hi) + "\n";
}

inline std::string single_input(const RunConfig& c, std::size_t count = 1)
{
    if (c.inputs.size() != count)
        throw ParseError(c.command + " expects " + std::to_string(count) + " input file(s)");
    return c.inputs.front();
}

enum class InputKind
{
    complex,
    ad,
    sing
};

inline InputKind kind_of(const Json& j)
{
    if (j.is_object() && j.contains("members"))
        return InputKind::sing;
    if (j.is_object() && j.contains("values"))
        return InputKind::ad;
    if (j.is_object() && j.contains("cells"))
        return InputKind::complex;
    throw ParseError("input is neither a complex, an ad nor a singular ad");
}

inline std::string violations_text(const std::vector<std::string>& v)
{
    std::string out;
    for (const auto& s : v)
        out += "violation: " + s + "\n";
    return out;
}

inline RunResult validate(const RunConfig& c)
{
    std::filesystem::path path = single_input(c);
    Json j = io::read_json_file(path);
    RunResult r;
    ValidationReport rep;
    std::string what;
    switch (kind_of(j))
    {
    case InputKind::complex:
    {
        BallComplex k = complex_from_json(j);
        rep = validate_complex(k);
        what = "complex with " + std::to_string(k.size()) + " cells";
        break;
    }
    case InputKind::ad:
    {
        PreAd m = ad_from_json(j, path.parent_path());
        rep = validate_complex(m.complex());
        if (rep.ok())
            rep = is_ad(m);
        what = "ad of degree " + std::to_string(m.degree()) + " over " + m.ring().to_string();
        break;
    }
    case InputKind::sing:
    {
        SingAd m = sing_ad_from_json(j, path.parent_path());
        rep = validate_complex(*m.base());
        if (rep.ok())
            rep = is_ad_mod_S(m);
        what = "ad mod S_" + std::to_string(m.n()) + " with S = " + m.sequence().to_string();
        break;
    }
    }
    r.report = what + "\n" + violations_text(rep.violations) + (rep.ok() ? "OK\n" : "INVALID\n");
    if (!rep.ok())
        r.exit_code = exit_validation;
    return r;
}

inline RunResult homology(const RunConfig& c)
{
    std::filesystem::path path = single_input(c);
    BallComplex k = path.extension() == ".json" ? complex_from_json(io::read_json_file(path))
                                                : complex_spec(Json(path.string()));
    auto rep = validate_complex(k);
    if (!rep.ok())
        return {exit_validation, violations_text(rep.violations) + "INVALID\n", ""};
    RunResult r;
    ChainComplexZ cc = cellular_chain_complex(k);
    for (int d = 0; d <= cc.top_degree(); ++d)
        r.report += "H_" + std::to_string(d) + " = " + cc.homology(d).to_string() + "\n";
    r.report += "euler characteristic " + std::to_string(k.euler_characteristic()) + "\n";
    return r;
}

inline int default_n(const RunConfig& c, const Resolved& r, int fallback)
{
    int n = c.n.value_or(fallback);
    if (n < 0 || static_cast<std::size_t>(n) > r.sequence.size())
        throw ParseError("--n must lie between 0 and the sequence length");
    return n;
}

inline RunResult bordism(const RunConfig& c)
{
    Resolved r = resolve(c);
    const int n = default_n(c, r, static_cast<int>(r.sequence.size()));
    RunResult out;
    out.report = header("bordism of ad/S_" + std::to_string(n), r);
    for (int k = r.lo; k <= r.hi; ++k)
        out.report += "degree " + std::to_string(k) + ": " +
                      (n == 0 ? bordism_group(k, r.ring) : bordism_group_mod_S(r.ring, r.sequence, n, k)).to_string() +
                      "\n";
    return out;
}

inline RunResult koszul(const RunConfig& c)
{
    Resolved r = resolve(c);
    const int n = default_n(c, r, static_cast<int>(r.sequence.size()));
    GradedModule m = bordism_module(r.ring, r.sequence, n, r.lo, r.hi);
    KoszulHomology h = koszul_homology(build_koszul(m));
    RunResult out;
    out.report = header("Koszul homology", r) + h.to_string();
    for (const auto& v : regularity_report(m))
        out.report += "x_" + std::to_string(v.index) + ": " +
                      (v.regular ? (*v.regular ? "regular" : "not regular") : "undecided") +
                      (v.detail.empty() ? "" : " (" + v.detail + ")") + "\n";
    if (h.higher_nonvanishing())
        out.report += "E2: nonvanishing higher Koszul homology\n";
    return out;
}

inline RunResult exactness(const RunConfig& c)
{
    Resolved r = resolve(c);
    if (r.sequence.size() == 0)
        throw ParseError("exactness needs a nonempty sequence");
    const int n = default_n(c, r, static_cast<int>(r.sequence.size()) - 1);
    if (static_cast<std::size_t>(n) + 1 > r.sequence.size())
        throw ParseError("exactness needs P_(n+1)");
    ExactSequenceReport rep = exact_sequence_check(r.ring, r.sequence, n, r.lo, r.hi);
    RunResult out;
    out.report = header("exact sequence for n = " + std::to_string(n), r) + rep.to_string();
    if (!r.sequence.entry(static_cast<std::size_t>(n) + 1))
        for (auto [k, split] : split_check(rep))
            out.report += "[k=" + std::to_string(k) + "] short exact sequence " + (split ? "SPLIT" : "FAIL (not split)") +
                          "\n";
    out.report += std::string("overall: ") + (rep.all_exact() ? "EXACT" : "FAIL") + "\n";
    return out;
}

inline SingAd read_sing(const std::string& path)
{
    Json j = io::read_json_file(path);
    if (kind_of(j) == InputKind::ad)
        return from_plain(ad_from_json(j, std::filesystem::path(path).parent_path()));
    if (kind_of(j) != InputKind::sing)
        throw ParseError(path + " is not an ad");
    SingAd m = sing_ad_from_json(j, std::filesystem::path(path).parent_path());
    auto rep = validate_complex(*m.base());
    if (rep.ok())
        rep = is_ad_mod_S(m);
    if (!rep.ok())
        throw Failure(exit_validation, path + " is not a valid ad mod S:\n" + violations_text(rep.violations));
    return m;
}

inline void write_output(const RunConfig& c, const Json& j, RunResult& out)
{
    if (c.output.empty())
        out.report += j.dump(2) + "\n";
    else
    {
        std::ofstream f(c.output);
        if (!f)
            throw ParseError("cannot write " + c.output);
        f << j.dump(2) << "\n";
        out.report += "wrote " + c.output + "\n";
    }
}

inline RunResult product_cmd(const RunConfig& c)
{
    if (c.inputs.size() != 2)
        throw ParseError("product expects two ad files");
    SingAd a = read_sing(c.inputs[0]);
    SingAd b = read_sing(c.inputs[1]);
    SingAd p = external_product(a, b);
    RunResult out;
    auto rep = is_ad_mod_S(p);
    out.report = "external product: ad mod S_" + std::to_string(p.n()) + " with S = " + p.sequence().to_string() +
                 ", degree " + std::to_string(p.degree()) + "\n" + violations_text(rep.violations) +
                 "is_ad_mod_S: " + (rep.ok() ? "OK" : "FAIL") + "\n";
    write_output(c, sing_ad_to_json(p), out);
    return out;
}

inline RunResult symmetrize(const RunConfig& c)
{
    SingAd m = read_sing(single_input(c));
    SingAd s = rho_P(m);
    auto ad = is_ad_mod_S(s);
    auto close = is_close_to(s);
    RunResult out;
    out.report = "rho_P: ad mod S_" + std::to_string(s.n()) + " with S = " + s.sequence().to_string() + ", degree " +
                 std::to_string(s.degree()) + "\n" + violations_text(ad.violations) +
                 "is_ad_mod_S: " + (ad.ok() ? "OK" : "FAIL") + "\n" + violations_text(close.violations) +
                 "is_close_to: " + (close.ok() ? "OK" : "FAIL") + "\n";
    write_output(c, sing_ad_to_json(s), out);
    return out;
}

inline RunResult compare(const RunConfig& c)
{
    Resolved r = resolve(c);
    const int n = default_n(c, r, static_cast<int>(r.sequence.size()));
    KoszulComparison cmp = compare_koszul_bordism(r.ring, r.sequence, n, r.lo, r.hi);
    RunResult out;
    out.report = header("bordism against Koszul E2", r) + cmp.to_string() +
                 "overall: " + (cmp.all_match() ? "MATCH" : "FAIL") + "\n";
    return out;
}

inline RunResult stage(const RunConfig& c)
{
    Resolved r = resolve(c);
    if (c.stage < 0 || c.stage > 2)
        throw ParseError("--stage must be 0, 1 or 2");
    StageComparison cmp = compare_stage(r.ring, r.sequence, c.stage, r.lo, r.hi);
    RunResult out;
    out.report = header("stage " + std::to_string(c.stage) + " of ad//P", r) + cmp.to_string();
    return out;
}

} // namespace cli_detail

inline RunResult run(const RunConfig& c)
{
    using namespace cli_detail;
    try
    {
        if (c.command == "validate")
            return validate(c);
        if (c.command == "homology")
            return homology(c);
        if (c.command == "bordism")
            return bordism(c);
        if (c.command == "koszul")
            return koszul(c);
        if (c.command == "exactness")
            return exactness(c);
        if (c.command == "product")
            return product_cmd(c);
        if (c.command == "symmetrize")
            return symmetrize(c);
        if (c.command == "compare")
            return compare(c);
        if (c.command == "stage")
            return stage(c);
        return {exit_parse, "", "unknown command \"" + c.command + "\""};
    }
    catch (const Failure& e)
    {
        return {e.code, "", e.what()};
    }
    catch (const ParseError& e)
    {
        return {exit_parse, "", std::string("parse error: ") + e.what()};
    }
    catch (const WindowOverflow& e)
    {
        return {exit_overflow, "", std::string("window overflow: ") + e.what()};
    }
    catch (const ComplexError& e)
    {
        return {exit_validation, "", std::string("invalid complex: ") + e.what()};
    }
    catch (const AdError& e)
    {
        return {exit_validation, "", std::string("invalid input: ") + e.what()};
    }
    catch (const std::domain_error& e)
    {
        return {exit_validation, "", std::string("invalid input: ") + e.what()};
    }
}

} // namespace adsing

#endif
