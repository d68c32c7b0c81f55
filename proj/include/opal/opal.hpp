#pragma once

// Operated polynomial identities over free operated algebras: bracketed
// words, exact-rational polynomials, monomial orders, term rewriting, and
// bounded Groebner-Shirshov verification.

#include "opal/context.hpp"
#include "opal/gsbasis.hpp"
#include "opal/json_io.hpp"
#include "opal/linalg.hpp"
#include "opal/opi.hpp"
#include "opal/order.hpp"
#include "opal/parse.hpp"
#include "opal/poly.hpp"
#include "opal/rational.hpp"
#include "opal/rewrite.hpp"
#include "opal/word.hpp"
