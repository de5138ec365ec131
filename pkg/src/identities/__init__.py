# Series Identity Registry
