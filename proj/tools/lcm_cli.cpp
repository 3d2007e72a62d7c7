#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lcm/config.hpp"
#include "lcm/verify.hpp"

using json = nlohmann::ordered_json;
using namespace lcm;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    bool timing = false;
    std::string config_path;
    std::optional<long> window_lo, window_hi;
    std::optional<std::size_t> prefix_bound, probe_depth;

    Config config() const
    {
        Config c = resolve_config(config_path);
        if (window_lo)
            c.window_lo = *window_lo;
        if (window_hi)
            c.window_hi = *window_hi;
        if (prefix_bound)
            c.prefix_bound = *prefix_bound;
        if (probe_depth)
            c.probe_depth = *probe_depth;
        return c;
    }
};

Presentation single(const std::string &spec)
{
    auto s = parse_monoid_spec(spec);
    if (s.kind != MonoidSpec::Kind::Single)
        throw usage_error("this command takes a single monoid, not " + spec);
    return catalog_monoid(s.left);
}

Word word_in(const Presentation &p, const std::string &s)
{
    Word w = parse_word(s);
    p.validate(w);
    return w;
}

void emit(const Options &o, const json &j, const std::string &text)
{
    if (o.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

json steps_json(const std::vector<RewriteStep<Index>> &steps)
{
    json a = json::array();
    for (const auto &s : steps)
        a.push_back({{"position", s.position}, {"result", format_word(s.result)}});
    return a;
}

// ---- normalize / eq ----------------------------------------------------

std::pair<std::string, json> normal_text(const std::string &spec, const std::string &input)
{
    auto s = parse_monoid_spec(spec);
    if (s.kind == MonoidSpec::Kind::Single) {
        auto p = catalog_monoid(s.left);
        std::vector<RewriteStep<Index>> steps;
        Word n = normal_form(p, word_in(p, input), &steps);
        return {format_word(n), steps_json(steps)};
    }
    if (s.kind == MonoidSpec::Kind::Product) {
        auto bar = input.find('|');
        if (bar == std::string::npos)
            throw parse_error(0, "a product word is written 'u | v'");
        Product m{catalog_monoid(s.left), catalog_monoid(s.right)};
        std::vector<RewriteStep<Index>> s1, s2;
        Word u = normal_form(m.left, word_in(m.left, input.substr(0, bar)), &s1);
        Word v = normal_form(m.right, word_in(m.right, input.substr(bar + 1)), &s2);
        return {format_word(u) + " | " + format_word(v), json{{"left", steps_json(s1)}, {"right", steps_json(s2)}}};
    }
    FreeProduct m{catalog_monoid(s.left), catalog_monoid(s.right)};
    return {format_fp_word(fp_normal(m, parse_fp_word(m, input))), json::array()};
}

int cmd_normalize(const Options &o, const std::string &spec, const std::string &w)
{
    auto [n, steps] = normal_text(spec, w);
    emit(o, json{{"input", w}, {"normal_form", n}, {"steps", steps}}, n);
    return 0;
}

int cmd_eq(const Options &o, const std::string &spec, const std::string &u, const std::string &v)
{
    auto a = normal_text(spec, u).first, b = normal_text(spec, v).first;
    bool same = a == b;
    emit(o, json{{"left", u}, {"right", v}, {"normal_forms", {a, b}}, {"equal", same}}, same ? "true" : "false");
    return 0;
}

// ---- ideals ------------------------------------------------------------

int cmd_ideal(const Options &o, const std::string &op, const std::string &spec, const std::vector<std::string> &args)
{
    auto p = single(spec);
    if (args.size() != 2)
        throw usage_error("ideal " + op + " takes two arguments");
    json j{{"op", op}, {"monoid", spec}};
    std::string text;
    if (op == "intersect") {
        auto r = intersect(p, parse_ideal(p, args[0]), parse_ideal(p, args[1]));
        text = format_ideal(r);
        j["result"] = text;
    } else if (op == "pullback") {
        auto r = pullback_hull(p, parse_hull(p, args[0]), parse_ideal(p, args[1]));
        text = format_ideal(r);
        j["result"] = text;
    } else if (op == "member") {
        bool r = contains(p, parse_ideal(p, args[0]), word_in(p, args[1]));
        text = r ? "true" : "false";
        j["result"] = r;
    } else if (op == "subset") {
        bool r = subset(p, parse_ideal(p, args[0]), parse_ideal(p, args[1]));
        text = r ? "true" : "false";
        j["result"] = r;
    } else {
        throw usage_error("unknown ideal operation " + op);
    }
    emit(o, j, text);
    return 0;
}

// ---- foundation --------------------------------------------------------

int cmd_foundation(const Options &o, const std::string &spec, const std::string &target,
                   const std::vector<std::string> &family)
{
    auto p = single(spec);
    bool generalized = target.find('\\') != std::string::npos;
    for (const auto &f : family)
        generalized = generalized || f.find('\\') != std::string::npos;
    FoundationResult r;
    if (generalized) {
        std::vector<GeneralizedIdeal> fam;
        for (const auto &f : family)
            fam.push_back(parse_generalized(p, f));
        r = is_foundation_generalized(p, parse_generalized(p, target), fam);
    } else {
        std::vector<Ideal> fam;
        for (const auto &f : family)
            fam.push_back(parse_ideal(p, f));
        r = is_foundation(p, parse_ideal(p, target), fam);
    }
    json j{{"target", target}, {"family", family}, {"foundation", r.foundation}};
    std::string text = r.foundation ? "true" : "false";
    if (r.witness) {
        j["witness"] = format_ideal(*r.witness);
        text += "\nwitness " + format_ideal(*r.witness);
    } else {
        j["witness"] = nullptr;
    }
    emit(o, j, text);
    return 0;
}

// ---- characters --------------------------------------------------------

int cmd_char(const Options &o, const std::string &op, const std::string &spec, const std::vector<std::string> &args)
{
    auto p = single(spec);
    Config cfg = o.config();
    if (op == "eval") {
        if (args.size() != 2)
            throw usage_error("char eval takes a character and an ideal");
        auto c = parse_character(p, args[0]);
        bool generalized = args[1].find('\\') != std::string::npos;
        bool v = generalized ? evaluate_generalized(p, c, parse_generalized(p, args[1]))
                             : evaluate(p, c, parse_ideal(p, args[1]));
        emit(o, json{{"character", format_character(c)}, {"ideal", args[1]}, {"value", v ? 1 : 0}}, v ? "1" : "0");
        return 0;
    }
    if (op == "classify") {
        if (args.size() != 1)
            throw usage_error("char classify takes one character");
        auto c = parse_character(p, args[0]);
        json j{{"character", format_character(c)},
               {"in_omega", format_verdict(in_omega(p, c))},
               {"maximal", format_verdict(is_maximal(p, c))}};
        std::string text;
        if (p.classified) {
            auto cls = classify_boundary(p, c);
            j["class"] = format_class(cls);
            text = format_class(cls);
        } else {
            j["class"] = nullptr;
            text = "unknown";
        }
        j["verdict_kind"] = p.classified ? "exact" : "bounded";
        std::vector<std::string> base;
        for (const auto &a : filter_base(p, c, cfg.probe_depth))
            base.push_back(format_ideal(a));
        j["filter_base"] = base;
        text += "\nmaximal " + format_verdict(is_maximal(p, c));
        emit(o, j, text);
        return 0;
    }
    throw usage_error("unknown char operation " + op);
}

// ---- regularity --------------------------------------------------------

RegInstance instance_from_json(const Presentation &p, const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw parse_error(e.byte, std::string("instance json: ") + e.what());
    }
    RegInstance in;
    if (!j.contains("x"))
        throw usage_error("instance json needs \"x\"");
    in.x = parse_ideal(p, j.at("x").get<std::string>());
    for (const auto &s : j.value("xs", json::array()))
        in.xs.push_back(parse_ideal(p, s.get<std::string>()));
    for (const auto &s : j.value("hs", json::array()))
        in.hs.push_back(parse_hull(p, s.get<std::string>()));
    return in;
}

json result_json(const WitnessResult &r)
{
    json items = json::array();
    for (const auto &[y, k] : r.items)
        items.push_back({{"ideal", format_generalized(y)}, {"k", k}});
    json j{{"verdict", format_witness_kind(r.kind)}, {"witness", items}, {"reason", r.reason}, {"bound", r.bound}};
    j["counterexample"] = r.counterexample ? json(format_word(*r.counterexample)) : json(nullptr);
    return j;
}

std::string result_text(const WitnessResult &r)
{
    std::string s = format_witness_kind(r.kind);
    for (const auto &[y, k] : r.items)
        s += "\n  " + format_generalized(y) + " fixed by h" + std::to_string(k);
    if (!r.reason.empty())
        s += "\n  " + r.reason;
    return s;
}

int cmd_reg(const Options &o, const std::string &kind, const std::string &spec, const std::string &instance)
{
    auto p = single(spec);
    Config cfg = o.config();
    auto t0 = std::chrono::steady_clock::now();
    WitnessResult r;
    if (kind == "criterion") {
        auto in = instance_from_json(p, instance);
        auto rep = check_boundary_equality_criterion(p, {in}, cfg.search());
        r = rep.results.at(0);
    } else {
        RegKind k;
        if (kind == "strong")
            k = RegKind::Strong;
        else if (kind == "plain")
            k = RegKind::Plain;
        else if (kind == "strong-boundary")
            k = RegKind::StrongBoundary;
        else if (kind == "boundary")
            k = RegKind::Boundary;
        else
            throw usage_error("reg check kinds: strong, plain, strong-boundary, boundary, criterion");
        r = check_instance(p, instance_from_json(p, instance), k, cfg.search());
    }
    json j = result_json(r);
    if (o.timing)
        j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(o, j, result_text(r));
    return 0;
}

// ---- means -------------------------------------------------------------

int cmd_mean(const Options &o, const std::string &spec, const std::string &chi, const std::string &elt,
             const std::vector<std::size_t> &ns)
{
    auto p = single(spec);
    auto g = make_element(p, parse_hull(p, elt), parse_character(p, chi));
    json rows = json::array();
    std::string text;
    for (std::size_t n : ns) {
        if (n == 0)
            throw usage_error("n must be positive");
        auto d = mean_deviation(p, g, n);
        rows.push_back({{"n", n}, {"deviation", format_rational(d)}});
        text += (text.empty() ? "" : "\n") + std::to_string(n) + " " + format_rational(d);
    }
    emit(o, json{{"element", format_hull(g.h)}, {"character", format_character(g.chi)}, {"deviations", rows}}, text);
    return 0;
}

// ---- verify ------------------------------------------------------------

int cmd_verify(const Options &o, const std::string &suite)
{
    if (suite != "appendix")
        throw usage_error("the only suite is 'appendix'");
    json checks = json::array();
    std::string text;
    bool all = true;
    std::size_t i = 0;
    for (const auto &run : verify::appendix_suite()) {
        auto r = run();
        ++i;
        all = all && r.pass;
        json c{{"index", i}, {"name", r.name}, {"anchor", r.anchor}, {"pass", r.pass}, {"detail", r.detail}};
        c["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
        if (o.timing)
            c["seconds"] = r.seconds;
        checks.push_back(c);
        std::ostringstream line;
        line << (r.pass ? "PASS" : "FAIL") << " " << i << " " << r.name << " [" << r.anchor << "] " << r.detail;
        if (r.counterexample)
            line << " counterexample: " << *r.counterexample;
        if (o.timing)
            line << " (" << r.seconds << " s)";
        text += line.str() + "\n";
    }
    text += all ? "all checks passed" : "some checks failed";
    emit(o, json{{"suite", suite}, {"pass", all}, {"checks", checks}}, text);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"left cancellative monoids: words, ideals, characters and regularity"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_flag("--timing", o.timing, "add run times to reports");
    app.add_option("--config", o.config_path, "key=value config file (default $LCM_CONFIG)");
    app.add_option("--window-lo", o.window_lo, "lowest index in search windows");
    app.add_option("--window-hi", o.window_hi, "highest index in search windows");
    app.add_option("--prefix-bound", o.prefix_bound, "prefix length bound for candidate pools");
    app.add_option("--probe-depth", o.probe_depth, "depth of filter bases");

    std::function<int()> action;
    std::string monoid = "R", word1, word2, op, target, chi, elt, instance, kind, suite = "appendix";
    std::vector<std::string> rest, family;
    std::vector<std::size_t> ns;

    auto *norm = app.add_subcommand("normalize", "normal form of a word");
    norm->add_option("monoid", monoid)->required();
    norm->add_option("word", word1)->required();
    norm->callback([&] { action = [&] { return cmd_normalize(o, monoid, word1); }; });

    auto *eq = app.add_subcommand("eq", "decide equality of two words");
    eq->add_option("monoid", monoid)->required();
    eq->add_option("left", word1)->required();
    eq->add_option("right", word2)->required();
    eq->callback([&] { action = [&] { return cmd_eq(o, monoid, word1, word2); }; });

    auto *id = app.add_subcommand("ideal", "intersect, pullback, member, subset");
    id->add_option("op", op)->required()->check(CLI::IsMember({"intersect", "pullback", "member", "subset"}));
    id->add_option("monoid", monoid)->required();
    id->add_option("args", rest)->required();
    id->callback([&] { action = [&] { return cmd_ideal(o, op, monoid, rest); }; });

    auto *fd = app.add_subcommand("foundation", "is the family a foundation set for the target");
    fd->add_option("monoid", monoid)->required();
    fd->add_option("--target", target)->required();
    fd->add_option("--family", family);
    fd->callback([&] { action = [&] { return cmd_foundation(o, monoid, target, family); }; });

    auto *ch = app.add_subcommand("char", "evaluate or classify a character");
    ch->add_option("op", op)->required()->check(CLI::IsMember({"eval", "classify"}));
    ch->add_option("args", rest)->required();
    ch->add_option("--monoid", monoid);
    ch->callback([&] { action = [&] { return cmd_char(o, op, monoid, rest); }; });

    auto *rg = app.add_subcommand("reg", "regularity checks");
    rg->add_option("op", op)->required()->check(CLI::IsMember({"check"}));
    rg->add_option("kind", kind)->required();
    rg->add_option("--monoid", monoid);
    rg->add_option("--instance", instance)->required();
    rg->callback([&] { action = [&] { return cmd_reg(o, kind, monoid, instance); }; });

    auto *mn = app.add_subcommand("mean", "deviation of the approximate invariant means");
    mn->add_option("op", op)->required()->check(CLI::IsMember({"dev"}));
    mn->add_option("--monoid", monoid);
    mn->add_option("--char", chi)->required();
    mn->add_option("--elt", elt)->required();
    mn->add_option("--n", ns)->required();
    mn->callback([&] { action = [&] { return cmd_mean(o, monoid, chi, elt, ns); }; });

    auto *vf = app.add_subcommand("verify", "run the check suite");
    vf->add_option("--suite", suite);
    vf->callback([&] { action = [&] { return cmd_verify(o, suite); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }
    try {
        return action();
    } catch (const parse_error &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const usage_error &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
