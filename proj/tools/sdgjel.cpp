#include "sdgjel/corpus.hpp"
#include "sdgjel/matcher.hpp"
#include "sdgjel/report.hpp"
#include "sdgjel/taxonomy.hpp"
#include "sdgjel/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef SDGJEL_DEFAULT_DATA_DIR
#define SDGJEL_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace sdgjel;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct run_config {
    std::string taxonomy_path;
    std::string catalog_path;
    std::string stoplist_path;
    std::string method_name = "lafleur";
    std::string weighting_name;
    int top_k = 3;
    std::string format = "tsv";
    std::string records_path;
    std::string linkage_path;
    std::vector<std::string> groups;
    int year_from = 0;
    int year_to = 0;
    int goal = 0;
};

std::string data_dir() {
    if (const char* env = std::getenv("SDGJEL_DATA_DIR"); env && *env) return env;
    return SDGJEL_DEFAULT_DATA_DIR;
}

std::string resolve(const std::string& given, const char* file) {
    return given.empty() ? (fs::path(data_dir()) / file).string() : given;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

jel_taxonomy load_taxonomy(const run_config& c) {
    return parse_jel_snapshot(slurp(resolve(c.taxonomy_path, "jel_snapshot.json")));
}
std::vector<sdg_goal> load_catalog(const run_config& c) {
    return parse_sdg_catalog(slurp(resolve(c.catalog_path, "sdg_catalog.json")));
}
stoplist load_stoplist(const run_config& c) { return parse_stoplist(slurp(resolve(c.stoplist_path, "stoplist.txt"))); }

method chosen_method(const run_config& c) {
    auto m = parse_method(c.method_name);
    if (!m) throw usage_error("unknown method '" + c.method_name + "' (direct|lafleur|selected3)");
    return *m;
}

weighting chosen_weighting(const run_config& c, method m) {
    if (c.weighting_name.empty())
        return m == method::lafleur ? weighting::top_five_then_harmonic : weighting::uniform;
    auto w = parse_weighting(c.weighting_name);
    if (!w) throw usage_error("unknown weighting '" + c.weighting_name + "' (uniform|harmonic|top5)");
    return *w;
}

void check_format(const run_config& c) {
    if (c.format != "tsv" && c.format != "json") throw usage_error("unknown format '" + c.format + "' (tsv|json)");
}

int cmd_validate(const run_config& c) {
    auto tax = load_taxonomy(c);
    auto stats = tax.stats();
    auto diffs = diff_counts(stats);
    write_stats(std::cout, stats, diffs);
    bool ok = diffs.empty() && stats.level2_count == expected_level2_total &&
              stats.level3_count == expected_level3_total;
    if (!ok) std::cerr << "sdgjel: snapshot counts differ from the reference edition\n";
    return ok ? exit_ok : exit_check_failed;
}

int cmd_match(const run_config& c) {
    check_format(c);
    auto m = chosen_method(c);
    if (m == method::direct && !c.weighting_name.empty())
        std::cerr << "sdgjel: note: --weighting is ignored for the direct method\n";
    auto w = chosen_weighting(c, m);
    auto tax = load_taxonomy(c);
    auto goals = load_catalog(c);
    auto stop = load_stoplist(c);
    code_index idx(tax, stop.function_words);
    if (m == method::direct) {
        std::vector<std::pair<int, std::vector<direct_hit>>> rows;
        for (const auto& g : goals) rows.emplace_back(g.id, direct_match(g, idx));
        if (c.format == "json") write_direct_json(std::cout, rows);
        else write_direct_tsv(std::cout, rows);
        return exit_ok;
    }
    auto table = build_linkage(goals, idx, m, w, c.top_k);
    if (c.format == "json") std::cout << linkage_to_json(table).dump(2) << '\n';
    else write_ranked_tsv(std::cout, table, tax);
    return exit_ok;
}

int cmd_export(const run_config& c) {
    auto m = chosen_method(c);
    auto w = chosen_weighting(c, m);
    auto tax = load_taxonomy(c);
    auto goals = load_catalog(c);
    auto stop = load_stoplist(c);
    code_index idx(tax, stop.function_words);
    std::cout << linkage_to_json(build_linkage(goals, idx, m, w, c.top_k)).dump(2) << '\n';
    return exit_ok;
}

int cmd_reduce(const run_config& c) {
    if (c.goal < 1 || c.goal > goal_count) throw usage_error("--goal must be in 1..17");
    auto goals = load_catalog(c);
    auto stop = load_stoplist(c);
    const auto& g = goals[static_cast<std::size_t>(c.goal - 1)];
    auto r = reduce_keywords_traced(g.lafleur_keywords, stop);
    auto missing = missing_after_reduction(g, r.survivors);
    write_reduction(std::cout, g, r, missing);
    return missing.empty() ? exit_ok : exit_check_failed;
}

corpus load_corpus(const run_config& c, const jel_taxonomy* tax) {
    if (c.records_path.empty()) throw usage_error("--records is required");
    std::ifstream in(c.records_path, std::ios::binary);
    if (!in) throw usage_error("cannot read " + c.records_path);
    auto corp = parse_corpus(in, tax);
    for (const auto& e : corp.errors)
        std::cerr << c.records_path << ':' << e.line << ": error: " << e.message << '\n';
    for (const auto& w : corp.warnings)
        std::cerr << c.records_path << ':' << w.line << ": warning: record " << w.record_id << ": unknown JEL code "
                  << w.code << '\n';
    return corp;
}

int cmd_tag(const run_config& c) {
    if (c.linkage_path.empty()) throw usage_error("--linkage is required");
    auto linkage = linkage_from_json(slurp(c.linkage_path));
    auto tax = load_taxonomy(c);
    auto corp = load_corpus(c, &tax);
    for (const auto& r : corp.records) std::cout << tagging_json(tag_record(r, linkage)) << '\n';
    return exit_ok;
}

std::vector<query_group> parse_groups(const std::vector<std::string>& flags) {
    if (flags.empty()) throw usage_error("at least one --group NAME=PHRASE[;PHRASE...] is required");
    std::vector<query_group> out;
    std::set<std::string> names;
    for (const auto& f : flags) {
        auto eq = f.find('=');
        if (eq == std::string::npos || eq == 0) throw usage_error("malformed --group '" + f + "'");
        query_group g{f.substr(0, eq), {}};
        if (g.name.find('\t') != std::string::npos) throw usage_error("group name may not contain a tab");
        std::stringstream rest(f.substr(eq + 1));
        std::string p;
        while (std::getline(rest, p, ';'))
            if (p.find_first_not_of(" \t") != std::string::npos) g.phrases.push_back(p);
        if (g.phrases.empty()) throw usage_error("group '" + g.name + "' has no phrases");
        if (!names.insert(g.name).second) throw usage_error("duplicate group name '" + g.name + "'");
        out.push_back(std::move(g));
    }
    return out;
}

int cmd_trend(const run_config& c) {
    auto groups = parse_groups(c.groups);
    auto corp = load_corpus(c, nullptr);
    int from = c.year_from, to = c.year_to;
    if (from == 0 || to == 0) {
        int lo = max_year, hi = min_year;
        for (const auto& r : corp.records) {
            lo = std::min(lo, r.year);
            hi = std::max(hi, r.year);
        }
        if (corp.records.empty()) lo = hi = min_year;
        if (from == 0) from = lo;
        if (to == 0) to = hi;
    }
    if (from > to) throw usage_error("--from is after --to");
    write_trend_tsv(std::cout, trend_count(corp.records, groups, from, to), from, to);
    return exit_ok;
}

void add_data_options(CLI::App* sub, run_config& c) {
    sub->add_option("--taxonomy", c.taxonomy_path, "JEL snapshot file");
    sub->add_option("--catalog", c.catalog_path, "SDG catalog file");
    sub->add_option("--stoplist", c.stoplist_path, "stoplist file");
}

void add_method_options(CLI::App* sub, run_config& c) {
    sub->add_option("--method", c.method_name, "direct|lafleur|selected3")->capture_default_str();
    sub->add_option("--weighting", c.weighting_name, "uniform|harmonic|top5 (default top5 for lafleur, else uniform)");
    sub->add_option("--top", c.top_k, "codes per SDG")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crosswalk between Sustainable Development Goals and JEL codes"};
    app.require_subcommand(1);
    run_config c;

    auto* validate = app.add_subcommand("validate", "check snapshot counts against the reference edition");
    add_data_options(validate, c);

    auto* match = app.add_subcommand("match", "link SDGs to JEL codes");
    add_data_options(match, c);
    add_method_options(match, c);
    match->add_option("--format", c.format, "tsv|json")->capture_default_str();

    auto* reduce = app.add_subcommand("reduce", "show the mechanical keyword reduction for one goal");
    add_data_options(reduce, c);
    reduce->add_option("--goal", c.goal, "goal number 1..17")->required();

    auto* exporter = app.add_subcommand("export-linkage", "write the linkage table as JSON");
    add_data_options(exporter, c);
    add_method_options(exporter, c);

    auto* tag = app.add_subcommand("tag", "score bibliographic records against a linkage table");
    add_data_options(tag, c);
    tag->add_option("--records", c.records_path, "JSON-lines corpus")->required();
    tag->add_option("--linkage", c.linkage_path, "exported linkage JSON")->required();

    auto* trend = app.add_subcommand("trend", "count records per year matching phrase groups");
    trend->add_option("--records", c.records_path, "JSON-lines corpus")->required();
    trend->add_option("--group", c.groups, "NAME=PHRASE[;PHRASE...], repeatable")->required();
    trend->add_option("--from", c.year_from, "first year")->check(CLI::Range(min_year, max_year));
    trend->add_option("--to", c.year_to, "last year")->check(CLI::Range(min_year, max_year));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*validate) return cmd_validate(c);
        if (*match) return cmd_match(c);
        if (*reduce) return cmd_reduce(c);
        if (*exporter) return cmd_export(c);
        if (*tag) return cmd_tag(c);
        if (*trend) return cmd_trend(c);
    } catch (const usage_error& e) {
        std::cerr << "sdgjel: " << e.what() << '\n';
        return exit_usage;
    } catch (const parse_error& e) {
        std::cerr << "sdgjel: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "sdgjel: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
