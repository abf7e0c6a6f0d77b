# Integration Tests
