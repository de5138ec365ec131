# Report Models
