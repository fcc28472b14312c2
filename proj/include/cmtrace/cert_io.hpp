#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmtrace/trace_closure.hpp"

namespace cmtrace {

/// Parenthesized textual form of a certificate tree:
///   (g N)                       generator leaf
///   (b CERT CERT)               bracket
///   (l ({NUM} {DEN} CERT) ...)  linear combination, NPoly coefficients
/// Shared subtrees are flattened on output.
std::string cert_to_string(const CertPtr& cert);
CertPtr cert_from_string(const std::string& src);

/// A replayable certificate bundle: mode, generator list, optional expected
/// target, and the tree itself. Text format, one declaration per line:
///   mode ambient|rank-one
///   gen N := EXPR
///   target := EXPR
///   cert CERT
struct CertBundle {
  ReductionMode mode = ReductionMode::ambient;
  std::vector<TracePolynomial> generators;
  std::optional<TracePolynomial> target;
  CertPtr cert;
};

CertBundle read_cert_bundle(std::istream& in);
void write_cert_bundle(std::ostream& out, const CertBundle& bundle);

/// Replays the bundle's tree over its generators. Returns the resulting
/// element in the bundle's mode.
TraceCtx::Elem replay_bundle(const CertBundle& bundle);

}  // namespace cmtrace
