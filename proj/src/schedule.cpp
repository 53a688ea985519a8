#include "eoh/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fmt/format.h>
#include <map>
#include <set>
#include <span>

namespace eoh::dsl {

namespace {

struct Token {
    std::string text;
    int column; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != '#' &&
               !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), int(i) + 1});
        i = j;
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view source) : source_(source) {}

    ParseResult run() {
        std::size_t pos = 0;
        int line_no = 0;
        while (pos <= source_.size()) {
            const std::size_t nl = source_.find('\n', pos);
            const std::string_view line =
                source_.substr(pos, nl == std::string_view::npos
                                        ? std::string_view::npos
                                        : nl - pos);
            ++line_no;
            statement(line_no, line);
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
        finish(line_no);

        ParseResult res;
        res.errors = std::move(errors_);
        if (res.errors.empty()) res.schedule = std::move(sched_);
        return res;
    }

private:
    void error(int line, int column, std::string message,
               std::string token = {}) {
        errors_.push_back({line, column, std::move(message), std::move(token)});
    }

    // key=value parameter map for one statement; reports duplicate and
    // malformed parameters.
    std::map<std::string, Token> params(int line,
                                        std::span<const Token> toks) {
        std::map<std::string, Token> out;
        for (const Token& t : toks) {
            const auto eq = t.text.find('=');
            if (eq == std::string::npos || eq == 0 ||
                eq + 1 >= t.text.size()) {
                error(line, t.column, "expected key=value parameter", t.text);
                continue;
            }
            auto key = t.text.substr(0, eq);
            if (out.contains(key)) {
                error(line, t.column, "duplicate parameter '" + key + "'",
                      t.text);
                continue;
            }
            out.emplace(std::move(key),
                        Token{t.text.substr(eq + 1), t.column + int(eq) + 1});
        }
        return out;
    }

    void check_known(int line, const std::map<std::string, Token>& p,
                     const std::set<std::string>& allowed) {
        for (const auto& [key, tok] : p)
            if (!allowed.contains(key))
                error(line, tok.column, "unknown parameter '" + key + "'",
                      tok.text);
    }

    std::optional<double> number(int line, const Token& tok) {
        double v{};
        const char* begin = tok.text.data();
        const char* end = begin + tok.text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end) {
            error(line, tok.column, "invalid number", tok.text);
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> require_number(int line, int stmt_col,
                                         std::map<std::string, Token>& p,
                                         const std::string& key) {
        const auto it = p.find(key);
        if (it == p.end()) {
            error(line, stmt_col, "missing required parameter '" + key + "'");
            return std::nullopt;
        }
        return number(line, it->second);
    }

    std::optional<double> nonneg(int line, int stmt_col,
                                 std::map<std::string, Token>& p,
                                 const std::string& key) {
        const auto it = p.find(key);
        const auto v = require_number(line, stmt_col, p, key);
        if (v && *v < 0.0) {
            error(line, it->second.column, "'" + key + "' must be >= 0",
                  it->second.text);
            return std::nullopt;
        }
        return v;
    }

    bool known_qubit(int line, const Token& tok) {
        const bool ok = std::ranges::any_of(
            sched_.qubits, [&](const auto& q) { return q.id == tok.text; });
        if (!ok)
            error(line, tok.column, "undeclared qubit '" + tok.text + "'",
                  tok.text);
        return ok;
    }

    void note_event(int line, int column) {
        if (readout_line_ > 0)
            error(line, column, "no statements may follow readout");
    }

    void statement(int line, std::string_view text) {
        const auto toks = tokenize(text);
        if (toks.empty()) return;
        const std::string& kw = toks[0].text;
        const int col = toks[0].column;
        const std::span<const Token> rest{toks.data() + 1, toks.size() - 1};

        if (kw == "material") {
            if (rest.size() != 1 ||
                (rest[0].text != "he3" && rest[0].text != "he4"))
                error(line, col, "material requires one value: he3 or he4");
            else
                sched_.header.material = rest[0].text;
        } else if (kw == "temperature" || kw == "pitch" || kw == "film" ||
                   kw == "t2") {
            if (rest.size() != 1) {
                error(line, col, kw + " requires one numeric value");
                return;
            }
            const auto v = number(line, rest[0]);
            if (!v) return;
            if (*v <= 0.0) {
                error(line, rest[0].column, kw + " must be > 0", rest[0].text);
                return;
            }
            if (kw == "temperature") sched_.header.temperature = *v;
            else if (kw == "pitch") sched_.header.pitch = *v;
            else if (kw == "film") sched_.header.film = *v;
            else sched_.header.t2 = *v;
        } else if (kw == "mode") {
            if (rest.size() != 1 ||
                (rest[0].text != "rwa" && rest[0].text != "full"))
                error(line, col, "mode requires one value: rwa or full");
            else
                sched_.header.mode = rest[0].text;
        } else if (kw == "qubit") {
            if (rest.empty()) {
                error(line, col, "qubit requires an id");
                return;
            }
            const Token& id = rest[0];
            if (id.text.find('=') != std::string::npos) {
                error(line, id.column, "qubit requires an id before parameters",
                      id.text);
                return;
            }
            if (std::ranges::any_of(sched_.qubits, [&](const auto& q) {
                    return q.id == id.text;
                })) {
                error(line, id.column, "duplicate qubit id '" + id.text + "'",
                      id.text);
                return;
            }
            auto p = params(line, rest.subspan(1));
            check_known(line, p, {"bias"});
            const auto bias = nonneg(line, col, p, "bias");
            if (bias) sched_.qubits.push_back({id.text, *bias});
        } else if (kw == "pulse") {
            note_event(line, col);
            if (rest.empty()) {
                error(line, col, "pulse requires a qubit id");
                return;
            }
            if (!known_qubit(line, rest[0])) return;
            auto p = params(line, rest.subspan(1));
            check_known(line, p, {"erf", "duration", "detuning"});
            PulseEvent ev;
            ev.qubit = rest[0].text;
            const auto erf = require_number(line, col, p, "erf");
            const auto dur = nonneg(line, col, p, "duration");
            if (const auto it = p.find("detuning"); it != p.end()) {
                const auto d = number(line, it->second);
                if (!d) return;
                ev.detuning = *d;
            }
            if (!erf || !dur) return;
            ev.erf = *erf;
            ev.duration = *dur;
            sched_.events.emplace_back(ev);
        } else if (kw == "stark") {
            note_event(line, col);
            if (rest.empty()) {
                error(line, col, "stark requires a qubit id");
                return;
            }
            if (!known_qubit(line, rest[0])) return;
            auto p = params(line, rest.subspan(1));
            check_known(line, p, {"field", "duration"});
            const auto field = require_number(line, col, p, "field");
            const auto dur = nonneg(line, col, p, "duration");
            if (!field || !dur) return;
            sched_.events.emplace_back(StarkEvent{rest[0].text, *field, *dur});
        } else if (kw == "swap") {
            note_event(line, col);
            if (rest.size() < 2) {
                error(line, col, "swap requires two qubit ids");
                return;
            }
            const bool a_ok = known_qubit(line, rest[0]);
            const bool b_ok = known_qubit(line, rest[1]);
            if (a_ok && b_ok && rest[0].text == rest[1].text)
                error(line, rest[1].column, "swap qubits must differ",
                      rest[1].text);
            auto p = params(line, rest.subspan(2));
            check_known(line, p, {"duration"});
            SwapEvent ev{rest[0].text, rest[1].text, std::nullopt};
            const auto it = p.find("duration");
            if (it == p.end()) {
                error(line, col, "missing required parameter 'duration'");
                return;
            }
            if (it->second.text != "auto") {
                const auto v = number(line, it->second);
                if (!v) return;
                if (*v < 0.0) {
                    error(line, it->second.column, "'duration' must be >= 0",
                          it->second.text);
                    return;
                }
                ev.duration = *v;
            }
            if (!a_ok || !b_ok) return;
            sched_.events.emplace_back(ev);
        } else if (kw == "sweep") {
            note_event(line, col);
            if (rest.size() < 2) {
                error(line, col, "sweep requires two qubit ids");
                return;
            }
            const bool a_ok = known_qubit(line, rest[0]);
            const bool b_ok = known_qubit(line, rest[1]);
            auto p = params(line, rest.subspan(2));
            check_known(line, p, {"rate", "span"});
            const auto rate = require_number(line, col, p, "rate");
            const auto span = require_number(line, col, p, "span");
            if (rate && *rate == 0.0)
                error(line, col, "sweep rate must be nonzero");
            if (!a_ok || !b_ok || !rate || !span || *rate == 0.0) return;
            sched_.events.emplace_back(
                SweepEvent{rest[0].text, rest[1].text, *rate, *span});
        } else if (kw == "wait") {
            note_event(line, col);
            if (rest.size() != 1) {
                error(line, col, "wait requires one duration in ps");
                return;
            }
            const auto v = number(line, rest[0]);
            if (!v) return;
            if (*v < 0.0) {
                error(line, rest[0].column, "wait duration must be >= 0",
                      rest[0].text);
                return;
            }
            sched_.events.emplace_back(WaitEvent{*v});
        } else if (kw == "readout") {
            note_event(line, col);
            readout_line_ = line;
            auto p = params(line, rest);
            check_known(line, p, {"fpeak", "duration", "seed", "shots"});
            ReadoutEvent ev;
            if (const auto it = p.find("fpeak");
                it != p.end() && it->second.text != "auto") {
                const auto v = number(line, it->second);
                if (v && *v <= 0.0)
                    error(line, it->second.column, "'fpeak' must be > 0",
                          it->second.text);
                if (v) ev.fpeak = *v;
            }
            if (const auto it = p.find("duration"); it != p.end()) {
                const auto v = number(line, it->second);
                if (v && *v <= 0.0)
                    error(line, it->second.column, "'duration' must be > 0",
                          it->second.text);
                if (v) ev.duration = *v;
            }
            for (const char* key : {"seed", "shots"}) {
                const auto it = p.find(key);
                if (it == p.end()) continue;
                std::uint64_t v{};
                const auto& txt = it->second.text;
                const auto [ptr, ec] =
                    std::from_chars(txt.data(), txt.data() + txt.size(), v);
                if (ec != std::errc{} || ptr != txt.data() + txt.size()) {
                    error(line, it->second.column,
                          std::string("'") + key + "' must be a non-negative integer",
                          txt);
                    continue;
                }
                if (std::string_view(key) == "seed") ev.seed = v;
                else ev.shots = v;
            }
            sched_.events.emplace_back(ev);
        } else {
            error(line, col, "unknown statement '" + kw + "'", kw);
        }
    }

    void finish(int last_line) {
        if (sched_.header.material.empty())
            error(last_line, 1, "missing material header");
    }

    std::string_view source_;
    Schedule sched_;
    std::vector<ParseError> errors_;
    int readout_line_ = 0;
};

std::string num(double v) { return fmt::format("{}", v); }

struct Renderer {
    std::string out;

    void line(std::string s) {
        out += s;
        out += '\n';
    }

    void operator()(const PulseEvent& e) {
        line(fmt::format("pulse {} detuning={} duration={} erf={}", e.qubit,
                         num(e.detuning), num(e.duration), num(e.erf)));
    }
    void operator()(const StarkEvent& e) {
        line(fmt::format("stark {} duration={} field={}", e.qubit,
                         num(e.duration), num(e.field)));
    }
    void operator()(const SwapEvent& e) {
        line(fmt::format("swap {} {} duration={}", e.a, e.b,
                         e.duration ? num(*e.duration) : "auto"));
    }
    void operator()(const SweepEvent& e) {
        line(fmt::format("sweep {} {} rate={} span={}", e.a, e.b, num(e.rate),
                         num(e.span)));
    }
    void operator()(const WaitEvent& e) {
        line(fmt::format("wait {}", num(e.duration)));
    }
    void operator()(const ReadoutEvent& e) {
        line(fmt::format("readout duration={} fpeak={} seed={} shots={}",
                         num(e.duration), e.fpeak ? num(*e.fpeak) : "auto",
                         e.seed, e.shots));
    }
};

} // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

std::string render(const Schedule& schedule) {
    Renderer r;
    r.line("material " + schedule.header.material);
    r.line("temperature " + num(schedule.header.temperature));
    r.line("pitch " + num(schedule.header.pitch));
    r.line("film " + num(schedule.header.film));
    r.line("mode " + schedule.header.mode);
    r.line("t2 " + num(schedule.header.t2));
    for (const auto& q : schedule.qubits)
        r.line(fmt::format("qubit {} bias={}", q.id, num(q.bias)));
    for (const auto& ev : schedule.events) std::visit(r, ev);
    return r.out;
}

} // namespace eoh::dsl
