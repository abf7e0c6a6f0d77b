# Contract Tests
