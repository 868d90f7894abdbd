# Test package for workflows
