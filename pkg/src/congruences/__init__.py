# Congruence Checks
