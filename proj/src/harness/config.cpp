#include "fgm/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "fgm/harness/csv.hpp"

namespace fgm::harness {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

struct LineContext {
    std::string_view source;
    std::size_t line;
    std::string_view key;
    std::string_view value;

    [[noreturn]] void fail(std::string_view what) const
    {
        throw DataError(fmt::format("{}: line {}: {}", source, line, what));
    }

    [[nodiscard]] double real() const
    {
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            fail(fmt::format("'{}' is not a number", value));
        }
        return out;
    }

    [[nodiscard]] int integer() const
    {
        int out = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
        if (ec != std::errc{} || ptr != value.data() + value.size()) {
            fail(fmt::format("'{}' is not an integer", value));
        }
        return out;
    }

    [[nodiscard]] bool boolean() const
    {
        if (value == "true" || value == "1") return true;
        if (value == "false" || value == "0") return false;
        fail(fmt::format("'{}' is not a boolean", value));
    }
};

void apply_cso(const LineContext& ctx, SwarmConfig& cfg)
{
    const auto& k = ctx.key;
    if (k == "N") cfg.n_agents = ctx.integer();
    else if (k == "M") cfg.smp = ctx.integer();
    else if (k == "SRD") cfg.srd = ctx.real();
    else if (k == "CDC") cfg.cdc = ctx.integer();
    else if (k == "SPC") cfg.spc = ctx.boolean();
    else if (k == "mr") cfg.mr = ctx.real();
    else if (k == "c") cfg.c0 = ctx.real();
    else if (k == "w") cfg.w0 = ctx.real();
    else if (k == "Iter_max") cfg.iter_max = ctx.integer();
    else if (k == "v_frac") cfg.v_frac = ctx.real();
    else ctx.fail(fmt::format("unknown CSO key '{}'", k));
}

void apply_pso(const LineContext& ctx, PsoConfig& cfg)
{
    const auto& k = ctx.key;
    if (k == "N") cfg.n_particles = ctx.integer();
    else if (k == "c1") cfg.c1 = ctx.real();
    else if (k == "c2") cfg.c2 = ctx.real();
    else if (k == "w") cfg.w = ctx.real();
    else if (k == "Iter_max") cfg.iter_max = ctx.integer();
    else if (k == "v_frac") cfg.v_frac = ctx.real();
    else ctx.fail(fmt::format("unknown PSO key '{}'", k));
}

} // namespace

void apply_config(std::istream& in, Estimator& estimator, std::string_view source)
{
    enum class Section { None, Cso, Pso } section = Section::None;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        LineContext ctx{source, line_no, {}, {}};
        if (line.front() == '[') {
            if (line == "[CSO]") section = Section::Cso;
            else if (line == "[PSO]") section = Section::Pso;
            else ctx.fail(fmt::format("unknown section '{}'", line));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            ctx.fail("expected 'key = value'");
        }
        ctx.key = trim(line.substr(0, eq));
        ctx.value = trim(line.substr(eq + 1));
        switch (section) {
        case Section::Cso: apply_cso(ctx, estimator.swarm); break;
        case Section::Pso: apply_pso(ctx, estimator.pso); break;
        case Section::None: ctx.fail("key outside a [CSO] or [PSO] section");
        }
    }
    estimator.swarm.validate(2);
    estimator.pso.validate();
}

void load_config(const std::filesystem::path& path, Estimator& estimator)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError(fmt::format("cannot open config '{}'", path.string()));
    }
    apply_config(in, estimator, path.string());
}

std::string render_config(const Estimator& estimator)
{
    const SwarmConfig& s = estimator.swarm;
    const PsoConfig& p = estimator.pso;
    return fmt::format("[CSO]\nN = {}\nM = {}\nSRD = {}\nCDC = {}\nSPC = {}\nmr = {}\nc = {}\nw = {}\n"
                       "Iter_max = {}\nv_frac = {}\n\n[PSO]\nN = {}\nc1 = {}\nc2 = {}\nw = {}\n"
                       "Iter_max = {}\nv_frac = {}\n",
                       s.n_agents, s.smp, format_exact(s.srd), s.cdc, s.spc ? "true" : "false",
                       format_exact(s.mr), format_exact(s.c0), format_exact(s.w0), s.iter_max,
                       format_exact(s.v_frac), p.n_particles, format_exact(p.c1),
                       format_exact(p.c2), format_exact(p.w), p.iter_max, format_exact(p.v_frac));
}

} // namespace fgm::harness
