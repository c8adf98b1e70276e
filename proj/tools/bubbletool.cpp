// bubbletool: command-line front end over the library. Subcommands: field
// info, bubbles verify/search, stats equidist/charsum/sideals/smooth, maier
// demo, geom goodcircle. Exit codes: 0 ok, 1 usage, 2 verification failed,
// 3 capacity, 4 not found.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bubbles/analytic.hpp"
#include "bubbles/cli_core.hpp"
#include "bubbles/congruence.hpp"
#include "bubbles/errors.hpp"
#include "bubbles/field.hpp"
#include "bubbles/geometry.hpp"
#include "bubbles/maier.hpp"
#include "bubbles/primes.hpp"

using json = nlohmann::ordered_json;

namespace {

// Floating values print with 12 significant digits, as strings so the digit
// count survives serialization.
std::string f12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Exact rationals print canonically: "15/2", or "2" when integral.
std::string rat_text(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_str();
}

bool all_digits(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

// Accepts integers, decimals ("7.5"), and fractions ("15/2"), with sign.
mpq_class parse_rational(const std::string& raw) {
    std::string s = raw;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    mpq_class value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den) || den.find_first_not_of('0') == std::string::npos)
            throw bubbles::invalid_argument_error("cannot parse number '" + raw + "'");
        value = mpq_class(mpz_class(num), mpz_class(den));
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        if (whole.empty())
            whole = "0";
        if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
            throw bubbles::invalid_argument_error("cannot parse number '" + raw + "'");
        mpz_class den = 1;
        for (size_t i = 0; i < frac.size(); ++i)
            den *= 10;
        value = mpq_class(mpz_class(whole) * den + (frac.empty() ? mpz_class(0) : mpz_class(frac)), den);
    } else {
        if (!all_digits(s))
            throw bubbles::invalid_argument_error("cannot parse number '" + raw + "'");
        value = mpq_class(mpz_class(s));
    }
    value.canonicalize();
    if (neg)
        value = -value;
    return value;
}

std::vector<mpq_class> parse_tuple(const std::string& text, size_t n, const std::string& what) {
    std::vector<mpq_class> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        parts.push_back(parse_rational(item));
    if (parts.size() != n)
        throw bubbles::invalid_argument_error(what + " needs " + std::to_string(n) +
                                              " comma-separated values, got '" + text + "'");
    return parts;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f)
        throw bubbles::invalid_argument_error("cannot open output file '" + out_path + "'");
    f << text << "\n";
}

json report_json(const bubbles::BubbleReport& r) {
    json primes = json::array();
    for (const auto& bp : r.primes) {
        json e;
        e["element"] = bubbles::format_element(bp.prime);
        e["unit"] = bp.unit ? json(bubbles::format_element(*bp.unit)) : json(nullptr);
        primes.push_back(std::move(e));
    }
    json j;
    j["d"] = r.d;
    j["q"] = bubbles::format_element(r.q);
    j["a"] = bubbles::format_element(r.a);
    j["center"] = {rat_text(r.cx), rat_text(r.cy)};
    j["r2"] = rat_text(r.r2);
    j["count"] = r.count;
    j["all_congruent"] = r.all_congruent;
    j["primes"] = std::move(primes);
    return j;
}

json factor_json(const bubbles::IdealFactor& f) {
    json j;
    j["p"] = f.rec.p;
    j["norm"] = f.rec.norm.get_str();
    switch (f.rec.split_type) {
    case bubbles::SplitType::split:
        j["split"] = "split";
        break;
    case bubbles::SplitType::inert:
        j["split"] = "inert";
        break;
    case bubbles::SplitType::ramified:
        j["split"] = "ramified";
        break;
    }
    if (f.rec.split_type != bubbles::SplitType::inert)
        j["root"] = f.root;
    j["generator"] =
        f.rec.generator ? json(bubbles::format_element(*f.rec.generator)) : json(nullptr);
    return j;
}

struct CommonOpts {
    long long d = -1;
    std::string q, a = "1";
    std::string format = "json";
    std::string out;
};

void require_json(const CommonOpts& c) {
    if (c.format != "json")
        throw bubbles::invalid_argument_error("this subcommand only supports --format json");
}

int run_field_info(const CommonOpts& c) {
    require_json(c);
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    json forms = json::array();
    for (const auto& f : bubbles::class_group(mpz_class(static_cast<long>(field.discriminant))))
        forms.push_back({f.a.get_str(), f.b.get_str(), f.c.get_str()});
    json units = json::array();
    for (const auto& u : field.units)
        units.push_back(bubbles::format_element(u));
    json j;
    j["d"] = field.d;
    j["discriminant"] = field.discriminant;
    j["w"] = field.basis_kind == bubbles::BasisKind::sqrt_d
                 ? "sqrt(" + std::to_string(field.d) + ")"
                 : "(1+sqrt(" + std::to_string(field.d) + "))/2";
    j["omega"] = field.unit_count;
    j["class_number"] = field.class_number;
    j["units"] = std::move(units);
    j["forms"] = std::move(forms);
    write_output(j.dump(2), c.out);
    return 0;
}

int run_verify(const CommonOpts& c, const std::string& center, const std::string& r2_text, long long k) {
    require_json(c);
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    bubbles::AlgebraicInt q = bubbles::parse_element(c.q, field);
    bubbles::AlgebraicInt a = bubbles::parse_element(c.a, field);
    auto ctr = parse_tuple(center, 2, "--center");
    mpq_class r2 = parse_rational(r2_text);
    bubbles::BubbleReport report = bubbles::verify_bubble(field, q, a, ctr[0], ctr[1], r2);
    write_output(report_json(report).dump(2), c.out);
    return report.all_congruent && report.count >= k ? 0 : 2;
}

int run_search(const CommonOpts& c, const std::string& region, long long k) {
    require_json(c);
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    bubbles::AlgebraicInt q = bubbles::parse_element(c.q, field);
    bubbles::AlgebraicInt a = bubbles::parse_element(c.a, field);
    auto reg = parse_tuple(region, 3, "--region");
    const long long budget = 4000;
    auto reports = bubbles::search_bubbles(field, q, a, reg[0], reg[1], reg[2], k, budget);
    json arr = json::array();
    for (const auto& r : reports)
        arr.push_back(report_json(r));
    json j;
    j["region"] = {{"center", {rat_text(reg[0]), rat_text(reg[1])}}, {"radius", rat_text(reg[2])}};
    j["k"] = k;
    j["count"] = reports.size();
    j["bubbles"] = std::move(arr);
    write_output(j.dump(2), c.out);
    return reports.empty() ? 4 : 0;
}

int run_equidist(const CommonOpts& c, std::uint64_t xlo, std::uint64_t xhi, int threads) {
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    bubbles::AlgebraicInt q = bubbles::parse_element(c.q, field);
    bubbles::ResidueSystem rs = bubbles::residue_group(q, field);
    if (threads < 1)
        throw bubbles::invalid_argument_error("need --threads >= 1");
    if (xlo >= xhi)
        throw bubbles::invalid_argument_error("need xlo < xhi");

    bubbles::OrbitCounts total;
    if (threads == 1) {
        total = bubbles::pi1_counts(xlo, xhi, rs);
    } else {
        // Split the norm range into contiguous chunks; the merge is
        // index-aligned, so the result does not depend on the thread count.
        std::vector<bubbles::OrbitCounts> parts(static_cast<size_t>(threads));
        std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
        std::vector<std::thread> pool;
        std::uint64_t len = xhi - xlo;
        for (int i = 0; i < threads; ++i) {
            std::uint64_t lo = xlo + len * static_cast<std::uint64_t>(i) / static_cast<std::uint64_t>(threads);
            std::uint64_t hi =
                xlo + len * static_cast<std::uint64_t>(i + 1) / static_cast<std::uint64_t>(threads);
            pool.emplace_back([&, i, lo, hi] {
                try {
                    if (lo < hi)
                        parts[static_cast<size_t>(i)] = bubbles::pi1_counts(lo, hi, rs);
                } catch (...) {
                    errors[static_cast<size_t>(i)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
        total.q = rs.q;
        total.x_lo = xlo;
        total.x_hi = xhi;
        for (size_t i = 0; i < rs.orbits.size(); ++i)
            total.counts.emplace_back(rs.orbit_label(static_cast<int>(i)), 0);
        for (const auto& part : parts) {
            if (part.counts.empty())
                continue;
            for (size_t i = 0; i < part.counts.size(); ++i)
                total.counts[i].second += part.counts[i].second;
            total.nonprincipal += part.nonprincipal;
        }
        total.expected = static_cast<double>(rs.field.unit_count) * static_cast<double>(xhi - xlo) /
                         (static_cast<double>(rs.field.class_number) * static_cast<double>(rs.phi) *
                          std::log(static_cast<double>(xlo)));
    }

    if (c.format == "csv") {
        std::ostringstream out;
        out << "label,count,expected,deviation";
        for (const auto& [label, count] : total.counts) {
            double dev = (static_cast<double>(count) - total.expected) / total.expected;
            out << "\n"
                << bubbles::format_element(label) << "," << count << "," << f12(total.expected) << ","
                << f12(dev);
        }
        write_output(out.str(), c.out);
        return 0;
    }
    require_json(c);
    json orbits = json::array();
    for (const auto& [label, count] : total.counts) {
        double dev = (static_cast<double>(count) - total.expected) / total.expected;
        orbits.push_back(
            {{"label", bubbles::format_element(label)}, {"count", count}, {"deviation", f12(dev)}});
    }
    json j;
    j["d"] = field.d;
    j["q"] = bubbles::format_element(q);
    j["xlo"] = xlo;
    j["xhi"] = xhi;
    j["expected"] = f12(total.expected);
    j["orbits"] = std::move(orbits);
    j["nonprincipal"] = total.nonprincipal;
    write_output(j.dump(2), c.out);
    return 0;
}

int run_charsum(const CommonOpts& c, std::uint64_t x) {
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    bubbles::AlgebraicInt q = bubbles::parse_element(c.q, field);
    bubbles::ResidueSystem rs = bubbles::residue_group(q, field);
    bubbles::CharacterTable table = bubbles::character_table(rs);
    struct Row {
        size_t index;
        std::complex<double> sum;
        double logsum;
    };
    std::vector<Row> rows;
    for (size_t i = 0; i < table.rows.size(); ++i) {
        auto [sum, logsum] = bubbles::char_prime_sum(table.rows[i], x, rs);
        rows.push_back({i, sum, logsum});
    }
    if (c.format == "csv") {
        std::ostringstream out;
        out << "character,abs_sum,log_sum,ratio";
        for (const auto& r : rows)
            out << "\n"
                << r.index << "," << f12(std::abs(r.sum)) << "," << f12(r.logsum) << ","
                << f12(std::abs(r.sum) / r.logsum);
        write_output(out.str(), c.out);
        return 0;
    }
    require_json(c);
    json chars = json::array();
    for (const auto& r : rows)
        chars.push_back({{"character", r.index},
                         {"principal", r.index == 0},
                         {"sum", {f12(r.sum.real()), f12(r.sum.imag())}},
                         {"abs_sum", f12(std::abs(r.sum))},
                         {"log_sum", f12(r.logsum)},
                         {"ratio", f12(std::abs(r.sum) / r.logsum)}});
    json j;
    j["d"] = field.d;
    j["q"] = bubbles::format_element(q);
    j["x"] = x;
    j["characters"] = std::move(chars);
    write_output(j.dump(2), c.out);
    return 0;
}

int run_sideals(const CommonOpts& c, std::uint64_t x) {
    require_json(c);
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    bubbles::AlgebraicInt q = bubbles::parse_element(c.q, field);
    bubbles::ResidueSystem rs = bubbles::residue_group(q, field);
    std::uint64_t count = bubbles::count_S(x, rs);
    double h_q = static_cast<double>(field.class_number) * static_cast<double>(rs.phi) /
                 static_cast<double>(field.unit_count);
    // S(x) ~ c_q x / (log x)^(1 - 1/h_q): compare the normalized count to the
    // Euler-product estimate of c_q.
    double lx = std::log(static_cast<double>(x));
    double empirical =
        static_cast<double>(count) / static_cast<double>(x) * std::pow(lx, 1.0 - 1.0 / h_q);
    double cq = bubbles::c_q_estimate(rs, x);
    json j;
    j["d"] = field.d;
    j["q"] = bubbles::format_element(q);
    j["x"] = x;
    j["count"] = count;
    j["empirical_c"] = f12(empirical);
    j["c_q_estimate"] = f12(cq);
    j["ratio"] = f12(empirical / cq);
    write_output(j.dump(2), c.out);
    return 0;
}

int run_smooth(const CommonOpts& c, std::uint64_t x, std::uint64_t y) {
    require_json(c);
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    std::uint64_t count = bubbles::count_smooth(x, y, field);
    double u = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
    double rho = bubbles::dickman_rho(u);
    double residue = bubbles::zeta_residue(field);
    json j;
    j["d"] = field.d;
    j["x"] = x;
    j["y"] = y;
    j["count"] = count;
    j["density"] = f12(static_cast<double>(count) / static_cast<double>(x));
    j["u"] = f12(u);
    j["rho"] = f12(rho);
    j["zeta_residue"] = f12(residue);
    j["expected_density"] = f12(rho * residue);
    write_output(j.dump(2), c.out);
    return 0;
}

int run_maier(const CommonOpts& c, std::uint64_t y, std::uint64_t z, double t, bool t_given) {
    require_json(c);
    bubbles::FieldDescriptor field = bubbles::make_field(c.d);
    bubbles::AlgebraicInt q = bubbles::parse_element(c.q, field);
    bubbles::AlgebraicInt a = bubbles::parse_element(c.a, field);
    if (!t_given)
        t = bubbles::t_choice(y);
    bubbles::MaierContext ctx = bubbles::make_context(field, q, a, y, z, t);
    bubbles::STCounts counts = bubbles::count_S_T(ctx);
    json pool = json::array();
    for (const auto& f : ctx.P)
        pool.push_back(factor_json(f));
    json j;
    j["d"] = field.d;
    j["q"] = bubbles::format_element(q);
    j["a"] = bubbles::format_element(a);
    j["y"] = y;
    j["z"] = z;
    j["t"] = f12(t);
    j["unit_case"] = ctx.unit_case;
    j["p0"] = factor_json(ctx.p0);
    j["p1"] = factor_json(ctx.p1);
    j["P"] = std::move(pool);
    j["Q"] = bubbles::format_element(ctx.Q);
    j["Q_norm"] = bubbles::norm(ctx.Q).get_str();
    j["S"] = counts.s_count;
    j["T"] = counts.t_count;
    j["T_multiples"] = counts.t_multiples;
    j["T_heavy"] = counts.t_heavy;
    j["T_smooth"] = counts.t_smooth;
    j["ratio"] = f12(counts.t_count == 0
                         ? 0.0
                         : static_cast<double>(counts.s_count) / static_cast<double>(counts.t_count));
    j["predicted_ratio"] = f12(counts.predicted_ratio);
    j["mertens_ratio"] = f12(counts.mertens_ratio);
    write_output(j.dump(2), c.out);
    return 0;
}

int run_goodcircle(const CommonOpts& c, const std::string& points_path, const std::string& center,
                   const std::string& r2_text) {
    require_json(c);
    std::ifstream in(points_path);
    if (!in)
        throw bubbles::invalid_argument_error("cannot open points file '" + points_path + "'");
    std::vector<bubbles::LabeledPoint> points;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cols;
        std::string item;
        std::istringstream ls(line);
        while (std::getline(ls, item, ','))
            cols.push_back(item);
        if (lineno == 1 && cols.size() == 5 && cols[0] == "x_num")
            continue; // header row
        if (cols.size() != 5)
            throw bubbles::invalid_argument_error("points file line " + std::to_string(lineno) +
                                                  ": expected x_num,x_den,y_num,y_den,label");
        bubbles::LabeledPoint lp;
        mpq_class x(parse_rational(cols[0]) / parse_rational(cols[1]));
        mpq_class y(parse_rational(cols[2]) / parse_rational(cols[3]));
        x.canonicalize();
        y.canonicalize();
        lp.point = bubbles::Point2(x, y);
        if (cols[4] == "good")
            lp.label = bubbles::PointLabel::good;
        else if (cols[4] == "bad")
            lp.label = bubbles::PointLabel::bad;
        else
            throw bubbles::invalid_argument_error("points file line " + std::to_string(lineno) +
                                                  ": label must be good or bad");
        points.push_back(std::move(lp));
    }
    auto ctr = parse_tuple(center, 2, "--center");
    mpq_class r2 = parse_rational(r2_text);
    bubbles::GoodCircleResult res =
        bubbles::good_circle(points, bubbles::Point2(ctr[0], ctr[1]), r2);
    json contained = json::array();
    for (const auto& p : res.contained_good)
        contained.push_back({rat_text(p.x), rat_text(p.y)});
    json j;
    j["circle"] = {{"center", {rat_text(res.circle.center.x), rat_text(res.circle.center.y)}},
                   {"r2", rat_text(res.circle.r2)}};
    j["count"] = res.contained_good.size();
    j["contained_good"] = std::move(contained);
    j["good_in_frame"] = res.good_in_frame;
    j["bad_in_3frame"] = res.bad_in_3frame;
    write_output(j.dump(2), c.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational toolkit for congruent primes in imaginary quadratic fields"};
    app.fallthrough(); // global options may trail the subcommand
    app.require_subcommand(1);

    CommonOpts c;
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "reserved; outputs are deterministic")->group("");

    auto add_common = [&](CLI::App* sub, bool with_q) {
        sub->add_option("--d", c.d, "field parameter d < 0, squarefree")->required();
        if (with_q)
            sub->add_option("--q", c.q, "modulus element, e.g. 5+1*w")->required();
        sub->add_option("--format", c.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", c.out, "write output to this file instead of stdout");
    };

    auto* field_cmd = app.add_subcommand("field", "field-level queries");
    auto* field_info = field_cmd->add_subcommand("info", "invariants of one field");
    add_common(field_info, false);

    auto* bubbles_cmd = app.add_subcommand("bubbles", "congruent-prime disks");
    auto* verify = bubbles_cmd->add_subcommand("verify", "classify every prime of one disk");
    std::string center, r2_text, region;
    long long k = 1;
    add_common(verify, true);
    verify->add_option("--a", c.a, "target residue (default 1)");
    verify->add_option("--center", center, "disk center x,y in the embedding frame")->required();
    verify->add_option("--r2", r2_text, "squared radius (rational)")->required();
    verify->add_option("--k", k, "minimum prime count for exit code 0 (default 1)");

    auto* search = bubbles_cmd->add_subcommand("search", "heuristic search for congruent disks");
    add_common(search, true);
    search->add_option("--a", c.a, "target residue (default 1)");
    search->add_option("--region", region, "search region x,y,radius")->required();
    search->add_option("--k", k, "minimum primes per returned disk")->required();

    auto* stats_cmd = app.add_subcommand("stats", "statistics runs");
    auto* equidist = stats_cmd->add_subcommand("equidist", "orbit counts of prime norms in [xlo, xhi)");
    std::uint64_t xlo = 0, xhi = 0, y_arg = 0, z_arg = 2;
    int threads = 1;
    add_common(equidist, true);
    equidist->add_option("--xlo", xlo, "lower norm bound (inclusive)")->required();
    equidist->add_option("--xhi", xhi, "upper norm bound (exclusive)")->required();
    equidist->add_option("--threads", threads, "worker threads (default 1)");

    auto* charsum = stats_cmd->add_subcommand("charsum", "character sums over prime norms in [x, 2x]");
    add_common(charsum, true);
    charsum->add_option("--xlo", xlo, "x: sums run over norms in [x, 2x]")->required();

    auto* sideals = stats_cmd->add_subcommand("sideals", "unit-congruent smooth ideal counts");
    add_common(sideals, true);
    sideals->add_option("--xlo", xlo, "count ideals of norm <= xlo")->required();

    auto* smooth = stats_cmd->add_subcommand("smooth", "smooth ideal counts against the Dickman density");
    add_common(smooth, false);
    smooth->add_option("--xlo", xlo, "count ideals of norm <= xlo")->required();
    smooth->add_option("--y", y_arg, "smoothness bound: prime factors of norm < y")->required();

    auto* maier_cmd = app.add_subcommand("maier", "matrix construction demos");
    auto* demo = maier_cmd->add_subcommand("demo", "build the prime pool and count S/T");
    double t_arg = 0;
    add_common(demo, true);
    demo->add_option("--a", c.a, "target residue (default 1)");
    demo->add_option("--y", y_arg, "pool norm bound")->required();
    demo->add_option("--z", z_arg, "disk ratio: the inner disk has squared radius yz (default 2)");
    auto* t_opt = demo->add_option("--t", t_arg, "band edge (default: the canonical choice)");

    auto* geom_cmd = app.add_subcommand("geom", "geometry tools");
    auto* goodcircle = geom_cmd->add_subcommand("goodcircle", "certified empty-circle extraction");
    std::string points_path;
    goodcircle->add_option("points", points_path, "CSV with columns x_num,x_den,y_num,y_den,label")
        ->required();
    goodcircle->add_option("--center", center, "frame center x,y")->required();
    goodcircle->add_option("--r2", r2_text, "squared frame radius (rational)")->required();
    goodcircle->add_option("--format", c.format, "output format: json")
        ->check(CLI::IsMember({"json", "csv"}));
    goodcircle->add_option("--out", c.out, "write output to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (field_info->parsed())
            return run_field_info(c);
        if (verify->parsed())
            return run_verify(c, center, r2_text, k);
        if (search->parsed())
            return run_search(c, region, k);
        if (equidist->parsed())
            return run_equidist(c, xlo, xhi, threads);
        if (charsum->parsed())
            return run_charsum(c, xlo);
        if (sideals->parsed())
            return run_sideals(c, xlo);
        if (smooth->parsed())
            return run_smooth(c, xlo, y_arg);
        if (demo->parsed())
            return run_maier(c, y_arg, z_arg, t_arg, t_opt->count() > 0);
        if (goodcircle->parsed())
            return run_goodcircle(c, points_path, center, r2_text);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const bubbles::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const bubbles::not_found_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const bubbles::excluded_modulus_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bubbles::invalid_argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bubbles::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
