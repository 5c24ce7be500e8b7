#include "risloc/protocol.hpp"

#include <array>
#include <cmath>

namespace risloc {

std::uint8_t crc8(std::span<const std::uint8_t> bytes) {
    std::uint8_t crc = 0x00;
    for (std::uint8_t byte : bytes) {
        crc ^= byte;
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07)
                               : static_cast<std::uint8_t>(crc << 1);
    }
    return crc;
}

namespace {

std::array<std::uint8_t, 4> payload_bytes(std::uint64_t payload32) {
    return {static_cast<std::uint8_t>(payload32 >> 24),
            static_cast<std::uint8_t>(payload32 >> 16),
            static_cast<std::uint8_t>(payload32 >> 8),
            static_cast<std::uint8_t>(payload32)};
}

std::uint64_t seal(std::uint64_t payload32) {
    const auto bytes = payload_bytes(payload32);
    return (payload32 << 8) | crc8(bytes);
}

bool crc_ok(std::uint64_t frame40) {
    const std::uint64_t payload = frame40 >> 8;
    const auto bytes = payload_bytes(payload);
    return crc8(bytes) == static_cast<std::uint8_t>(frame40 & 0xff);
}

} // namespace

std::uint64_t encode_sensing_frame(const SensingFrame& frame) {
    if (frame.preamble >= (1u << 5))
        throw std::invalid_argument("encode_sensing_frame: preamble exceeds 5 bits");
    if (frame.user_id >= (1u << 20))
        throw std::invalid_argument("encode_sensing_frame: user_id exceeds 20 bits");
    if (frame.timestamp >= (1u << 7))
        throw std::invalid_argument("encode_sensing_frame: timestamp exceeds 7 bits");
    const std::uint64_t payload = (static_cast<std::uint64_t>(frame.preamble) << 27) |
                                  (static_cast<std::uint64_t>(frame.user_id) << 7) |
                                  frame.timestamp;
    return seal(payload);
}

std::uint64_t encode_response_frame(const ResponseFrame& frame) {
    if (frame.user_id >= (1u << 20))
        throw std::invalid_argument("encode_response_frame: user_id exceeds 20 bits");
    const long cm = std::lround(frame.height_m * 100.0);
    if (cm < 0 || cm > 255)
        throw std::invalid_argument("encode_response_frame: height outside 0..2.55 m");
    const std::uint64_t payload = (static_cast<std::uint64_t>(frame.user_id) << 12) |
                                  (static_cast<std::uint64_t>(frame.permission) << 11) |
                                  (static_cast<std::uint64_t>(cm) << 3);
    return seal(payload);
}

SensingDecodeResult decode_sensing_frame(std::uint64_t bits) {
    if (bits >> kFrameBits)
        throw std::invalid_argument("decode_sensing_frame: more than 40 bits");
    if (!crc_ok(bits))
        return {std::nullopt, DecodeError::CrcMismatch};
    SensingFrame frame;
    frame.preamble = static_cast<std::uint8_t>((bits >> 35) & 0x1f);
    frame.user_id = static_cast<std::uint32_t>((bits >> 15) & 0xfffff);
    frame.timestamp = static_cast<std::uint8_t>((bits >> 8) & 0x7f);
    if (frame.preamble != kSensingPreamble)
        return {std::nullopt, DecodeError::PreambleMismatch};
    return {frame, std::nullopt};
}

ResponseDecodeResult decode_response_frame(std::uint64_t bits) {
    if (bits >> kFrameBits)
        throw std::invalid_argument("decode_response_frame: more than 40 bits");
    if (!crc_ok(bits))
        return {std::nullopt, DecodeError::CrcMismatch};
    ResponseFrame frame;
    frame.user_id = static_cast<std::uint32_t>((bits >> 20) & 0xfffff);
    frame.permission = (bits >> 19) & 1;
    frame.height_m = static_cast<double>((bits >> 11) & 0xff) / 100.0;
    return {frame, std::nullopt};
}

std::string frame_to_hex(std::uint64_t bits) {
    static const char* digits = "0123456789abcdef";
    std::string out(10, '0');
    for (int i = 0; i < 10; ++i)
        out[i] = digits[(bits >> (36 - 4 * i)) & 0xf];
    return out;
}

std::optional<std::uint64_t> frame_from_hex(const std::string& hex) {
    if (hex.size() != 10)
        return std::nullopt;
    std::uint64_t bits = 0;
    for (char ch : hex) {
        int v;
        if (ch >= '0' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
        else return std::nullopt;
        bits = (bits << 4) | static_cast<std::uint64_t>(v);
    }
    return bits;
}

HandshakeState step_handshake(const HandshakeState& state, const HandshakeEvent& event) {
    HandshakeState next = state;
    switch (event.kind) {
    case HandshakeEvent::SensingFrameSent:
        if (state.phase != HandshakePhase::Idle && state.phase != HandshakePhase::SensingSent)
            throw ProtocolViolation("sensing frame sent outside sensing stage");
        next.phase = HandshakePhase::SensingSent;
        return next;
    case HandshakeEvent::ResponseReceived:
        if (state.phase != HandshakePhase::SensingSent &&
            state.phase != HandshakePhase::Communicating)
            throw ProtocolViolation("response received without a preceding sensing frame");
        next.last_height_m = event.height_m;
        next.response_fresh = true;
        if (state.phase == HandshakePhase::SensingSent)
            next.phase = HandshakePhase::ResponseReceived;
        return next;
    case HandshakeEvent::CycleTick:
        next.last_timestamp = static_cast<std::uint8_t>((state.last_timestamp + 1) & 0x7f);
        switch (state.phase) {
        case HandshakePhase::Idle:
            return next;
        case HandshakePhase::SensingSent:
            // No response arrived within the cycle; the call lapses.
            next.phase = HandshakePhase::Idle;
            return next;
        case HandshakePhase::ResponseReceived:
            next.phase = HandshakePhase::Communicating;
            next.response_fresh = false;
            return next;
        case HandshakePhase::Communicating:
            next.phase = state.response_fresh ? HandshakePhase::Communicating
                                              : HandshakePhase::Terminating;
            next.response_fresh = false;
            return next;
        case HandshakePhase::Terminating:
            next.phase = HandshakePhase::Idle;
            return next;
        }
        throw ProtocolViolation("unreachable");
    case HandshakeEvent::BsStopsSensing:
    case HandshakeEvent::UeStopsResponding:
        if (state.phase != HandshakePhase::Communicating &&
            state.phase != HandshakePhase::ResponseReceived)
            throw ProtocolViolation("termination event outside an active link");
        next.phase = HandshakePhase::Terminating;
        next.response_fresh = false;
        return next;
    }
    throw ProtocolViolation("unknown event");
}

TimingBudget timing_budget(double bit_rate_bps, double tx_power_w,
                           const CycleSchedule& schedule) {
    if (bit_rate_bps <= 0.0)
        throw std::invalid_argument("timing_budget: bit rate must be positive");
    TimingBudget b;
    b.frame_time_s = static_cast<double>(kFrameBits) / bit_rate_bps;
    b.comm_window_s = schedule.communication_window_s();
    b.energy_per_cycle_j =
        tx_power_w * (schedule.sensing_slot_ns + schedule.response_slot_ns) * 1e-9;
    return b;
}

} // namespace risloc
