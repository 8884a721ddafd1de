#pragma once

#include "minoramp/amplify.hpp"
#include "minoramp/certificate.hpp"
#include "minoramp/claw.hpp"
#include "minoramp/forest.hpp"
#include "minoramp/generators.hpp"
#include "minoramp/graph.hpp"
#include "minoramp/io.hpp"
#include "minoramp/mates.hpp"
#include "minoramp/minor.hpp"
#include "minoramp/params.hpp"
#include "minoramp/rational.hpp"
#include "minoramp/shrubbery.hpp"
