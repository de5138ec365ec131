# Verification Runner