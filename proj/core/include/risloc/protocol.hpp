#ifndef RISLOC_PROTOCOL_HPP
#define RISLOC_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace risloc {

// 40-bit frames, MSB-first throughout. Bit 39 of the packed word is the
// first bit on the wire.
inline constexpr int kFrameBits = 40;
inline constexpr std::uint8_t kSensingPreamble = 0b10110;

/// CRC-8, polynomial 0x07, init 0x00, no reflection, no final xor.
std::uint8_t crc8(std::span<const std::uint8_t> bytes);

struct SensingFrame {
    std::uint8_t preamble = kSensingPreamble;  // 5 bits
    std::uint32_t user_id = 0;                 // 20 bits
    std::uint8_t timestamp = 0;                // 7-bit cyclic counter
};

struct ResponseFrame {
    std::uint32_t user_id = 0;   // 20 bits
    bool permission = false;     // 1 bit
    double height_m = 0.0;       // encoded with 1 cm resolution, 0..2.55 m
    // 3 reserved bits, then 8-bit CRC
};

enum class DecodeError { CrcMismatch, PreambleMismatch };

/// preamble | user_id | timestamp | crc packed MSB-first; the CRC covers the
/// 32 bits ahead of it. Field overflow throws std::invalid_argument.
std::uint64_t encode_sensing_frame(const SensingFrame& frame);
std::uint64_t encode_response_frame(const ResponseFrame& frame);

struct SensingDecodeResult {
    std::optional<SensingFrame> frame;
    std::optional<DecodeError> error;
};
struct ResponseDecodeResult {
    std::optional<ResponseFrame> frame;
    std::optional<DecodeError> error;
};

SensingDecodeResult decode_sensing_frame(std::uint64_t bits);
ResponseDecodeResult decode_response_frame(std::uint64_t bits);

/// 10 hex characters, MSB-first.
std::string frame_to_hex(std::uint64_t bits);
std::optional<std::uint64_t> frame_from_hex(const std::string& hex);

/// TDD cycle bookkeeping in integer nanoseconds so the slots always sum to
/// the cycle period exactly.
struct CycleSchedule {
    std::int64_t cycle_period_ns = 500'000'000;   // 0.5 s
    std::int64_t sensing_slot_ns = 20'000;        // 20 us
    std::int64_t response_slot_ns = 20'000;       // 20 us
    std::int64_t propagation_guard_ns = 5'300;    // per direction

    std::int64_t communication_window_ns() const {
        return cycle_period_ns - sensing_slot_ns - response_slot_ns - 2 * propagation_guard_ns;
    }
    double communication_window_s() const { return communication_window_ns() * 1e-9; }
};

enum class HandshakePhase { Idle, SensingSent, ResponseReceived, Communicating, Terminating };

struct HandshakeState {
    HandshakePhase phase = HandshakePhase::Idle;
    double last_height_m = 0.0;
    std::uint8_t last_timestamp = 0;
    bool response_fresh = false;  // a height arrived since the last cycle tick
};

struct HandshakeEvent {
    enum Kind { SensingFrameSent, ResponseReceived, CycleTick, BsStopsSensing, UeStopsResponding };
    Kind kind;
    double height_m = 0.0;  // for ResponseReceived
};

class ProtocolViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic transition table for the sensing/communication handshake.
/// Throws ProtocolViolation on transitions outside it.
HandshakeState step_handshake(const HandshakeState& state, const HandshakeEvent& event);

struct TimingBudget {
    double frame_time_s = 0.0;
    double comm_window_s = 0.0;
    double energy_per_cycle_j = 0.0;
};

TimingBudget timing_budget(double bit_rate_bps, double tx_power_w,
                           const CycleSchedule& schedule = {});

} // namespace risloc

#endif
