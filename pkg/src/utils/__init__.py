# Configuration, Timing and Term Cache