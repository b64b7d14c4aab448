#pragma once

#include <string_view>

#include "mvlab/mfunc.hpp"

namespace mvlab {

/// Parses a function spec:
///
///   spec := name | name '(' arg (',' arg)* ')'
///   arg  := spec | decimal literal
///
/// Leaves: one, divisor, moebius, liouville, eps.
/// Constructors: lambda0(a,b), lambda1(a,b), twist(f,t), abs(f), conv(f,g),
/// char(f,q,index). Whitespace between tokens is ignored.
/// Throws ParseError (carrying the byte offset) on malformed input or an
/// unknown name.
MultiplicativeFn parse_fn_spec(std::string_view spec);

}  // namespace mvlab
