#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frhyper {

enum class ErrorCode {
  // structure validation
  EmptyNode,
  OrphanPacket,
  IdOutOfRange,
  DuplicatePacketInNode,
  EmptyEdge,
  IsolatedVertex,
  // analysis
  KOutOfRange,
  FileTooLarge,
  InstanceTooLarge,
  IrreparableNode,
  EmptyNodeAfterAdapt,
  OrphanPacketAfterAdapt,
  // bounds
  InvalidSequence,
  Unrealizable,
  OddTheta,
  InvalidPairing,
  // construction
  InvalidEdge,
  LinearityViolation,
  NotASuperset,
  TargetInfeasible,
  // io
  SyntaxError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type. `index` carries the
// 1-based node, packet, edge or line number the error refers to, if any.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::move(message)), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace frhyper
