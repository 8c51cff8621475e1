#ifndef FILIFORM_FILIFORM_HPP
#define FILIFORM_FILIFORM_HPP

#include "filiform/affine.hpp"
#include "filiform/catalog.hpp"
#include "filiform/certificate.hpp"
#include "filiform/derivations.hpp"
#include "filiform/json_io.hpp"
#include "filiform/lie_algebra.hpp"
#include "filiform/linalg.hpp"
#include "filiform/matrix.hpp"
#include "filiform/rational.hpp"

#endif  // FILIFORM_FILIFORM_HPP
