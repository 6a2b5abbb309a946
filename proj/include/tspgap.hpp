#ifndef TSPGAP_TSPGAP_HPP
#define TSPGAP_TSPGAP_HPP

#include "tspgap/core.hpp"
#include "tspgap/ellipse.hpp"
#include "tspgap/exact.hpp"
#include "tspgap/families/certificate.hpp"
#include "tspgap/families/ijk.hpp"
#include "tspgap/families/pseudo_tour.hpp"
#include "tspgap/families/subdivided.hpp"
#include "tspgap/io/atomic_write.hpp"
#include "tspgap/io/native_format.hpp"
#include "tspgap/io/svg.hpp"
#include "tspgap/io/tsplib.hpp"
#include "tspgap/localsearch.hpp"
#include "tspgap/lp/min_cut.hpp"
#include "tspgap/lp/simplex.hpp"
#include "tspgap/lp/subtour.hpp"

#endif
