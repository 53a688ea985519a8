#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Line-oriented experiment description (.eoh): one statement per line,
// `#` comments, lowercase keywords, key=value parameters in any order.
// Numeric fields are stored in the grammar's units (V/cm, GHz, ps, ns, ms)
// so that render/parse round-trips exactly; consumers convert on use.

namespace eoh::dsl {

struct ScheduleHeader {
    std::string material;       // he3 | he4 (required)
    double temperature = 0.010; // K
    double pitch = 500.0;       // nm
    double film = 500.0;        // nm
    std::string mode = "rwa";   // rwa | full
    double t2 = 100.0;          // ms

    bool operator==(const ScheduleHeader&) const = default;
};

struct QubitDecl {
    std::string id;
    double bias; // V/cm

    bool operator==(const QubitDecl&) const = default;
};

struct PulseEvent {
    std::string qubit;
    double erf;            // V/cm
    double duration;       // ps
    double detuning = 0.0; // GHz

    bool operator==(const PulseEvent&) const = default;
};

struct StarkEvent {
    std::string qubit;
    double field;    // V/cm
    double duration; // ps

    bool operator==(const StarkEvent&) const = default;
};

struct SwapEvent {
    std::string a, b;
    std::optional<double> duration; // ps; nullopt = auto (pi hbar / 2g)

    bool operator==(const SwapEvent&) const = default;
};

struct SweepEvent {
    std::string a, b;
    double rate; // GHz per ns
    double span; // GHz, half-width of the detuning window

    bool operator==(const SweepEvent&) const = default;
};

struct WaitEvent {
    double duration; // ps

    bool operator==(const WaitEvent&) const = default;
};

struct ReadoutEvent {
    std::optional<double> fpeak;  // V/cm; nullopt = auto (0.99/0.01 ramp)
    double duration = 1.0;        // ns
    std::uint64_t seed = 0;
    std::uint64_t shots = 1;

    bool operator==(const ReadoutEvent&) const = default;
};

using Event = std::variant<PulseEvent, StarkEvent, SwapEvent, SweepEvent,
                           WaitEvent, ReadoutEvent>;

struct Schedule {
    ScheduleHeader header;
    std::vector<QubitDecl> qubits;
    std::vector<Event> events;

    bool operator==(const Schedule&) const = default;
};

struct ParseError {
    int line;   // 1-based
    int column; // 1-based
    std::string message;
    std::string token;
};

struct ParseResult {
    std::optional<Schedule> schedule; // present iff errors is empty
    std::vector<ParseError> errors;
};

// Never throws on malformed input: collects every error it can find.
ParseResult parse(std::string_view source);

// Canonical text form: fixed statement order, one statement per event,
// sorted parameters. parse(render(s)) == s for every valid schedule.
std::string render(const Schedule& schedule);

} // namespace eoh::dsl
