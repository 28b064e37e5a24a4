#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pebbletl/syntax.hpp"

namespace pebbletl {

/// Builders for the stock pebble properties. Each returns the exact AST of
/// the defining formula, with fixed binder names, and throws
/// std::invalid_argument when a named symbol is not declared (or mistyped)
/// in the alphabet. Every output is a sentence.

/// Same(a, b): a and b have the same designation now.
///   <x. <y. x = y>(a)>(b)
FormulaPtr same(const Alphabet& alphabet, const std::string& a,
                const std::string& b);

/// AlwaysNew(d): d occupies a fresh element at every moment.
///   G <x. X G <y. ~(y = x)>(d)>(d)
FormulaPtr always_new(const Alphabet& alphabet, const std::string& d);

/// SameInPast(a, d): a is now where d has been at some past moment.
///   <x. O <y. y = x>(d)>(a)
FormulaPtr same_in_past(const Alphabet& alphabet, const std::string& a,
                        const std::string& d);

/// NoChange(c): c keeps its designation at the next moment.
///   <x. X <y. x = y>(c)>(c)
FormulaPtr no_change(const Alphabet& alphabet, const std::string& c);

/// AlwaysReturn(a): a always comes back to its current element at some
/// strictly later moment.
///   G <x. X F <y. x = y>(a)>(a)
FormulaPtr always_return(const Alphabet& alphabet, const std::string& a);

/// NextNew(a, d): a moves next exactly the way d once moved from a's
/// current element. Variant 1 avoids the Yesterday operator at the cost of
/// an auxiliary constant c holding a's next designation; variant 2 needs no
/// extra constant.
///
///   NextNew1(a, d, c) =
///     <w. <x. O (<y. y = x>(d) & X <v. v = w>(d))>(a)>(c)
///     & <z. X <t. t = z>(a)>(c)
///   NextNew2(a, d) =
///     X <w. Y <x. O (<y. y = x>(d) & X <v. v = w>(d))>(a)>(a)
FormulaPtr next_new(const Alphabet& alphabet, int variant, const std::string& a,
                    const std::string& d,
                    const std::optional<std::string>& c = std::nullopt);

/// E restricted to the pairs designated by c1 (second component) and c2
/// (first component) never changes over time:
///   G <x. <y. (E(x, y) -> G E(x, y) & H E(x, y))
///             & (G E(x, y) & H E(x, y) -> E(x, y))>(c1)>(c2)
FormulaPtr rigid_on_visited(const Alphabet& alphabet, const std::string& E,
                            const std::string& c1, const std::string& c2);

/// Forwarding-pointer message delivery: the message m starts with the
/// sender s, then picks up the receiver r's migration path at a host both
/// have visited and follows it move for move.
///   Same(s, m)
///   & X <z. F <x. F <y. x = y & y = z>(r)>(s)>(m)
///   & X G NextNew2(m, r)
FormulaPtr forwarding_protocol(const Alphabet& alphabet, const std::string& s,
                               const std::string& r, const std::string& m);

/// Dispatch for the @Macro(args) forms in formula files. Throws
/// std::invalid_argument for unknown macros or wrong argument counts.
FormulaPtr expand_builder_macro(const std::string& name,
                                const std::vector<std::string>& args,
                                const Alphabet& alphabet);

}  // namespace pebbletl
