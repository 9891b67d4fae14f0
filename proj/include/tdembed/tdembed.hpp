#pragma once

// Umbrella header: exact skew-field arithmetic, right-projective geometry,
// transversal designs, the finite-group catalog, embeddings, and the
// brute-force oracles. serialize.hpp is separate because it pulls in the
// vendored JSON header.

#include "tdembed/design.hpp"
#include "tdembed/embedding.hpp"
#include "tdembed/errors.hpp"
#include "tdembed/field.hpp"
#include "tdembed/geometry.hpp"
#include "tdembed/groups.hpp"
#include "tdembed/oracle.hpp"
#include "tdembed/poly.hpp"
#include "tdembed/scalar.hpp"
