# q-WZ Verification Toolkit
__version__ = "1.0.0"
