# q-Series Primitives
