package org.junit.jupiter.api;

public final class Assertions {
    private Assertions() {
    }

    public static void assertEquals(long expected, long actual) {
        if (expected != actual) {
            throw new AssertionError("expected " + expected + " but was " + actual);
        }
    }

    public static void assertEquals(Object expected, Object actual) {
        if (expected == null ? actual != null : !expected.equals(actual)) {
            throw new AssertionError("expected " + expected + " but was " + actual);
        }
    }

    public static void assertTrue(boolean condition) {
        if (!condition) {
            throw new AssertionError("expected true");
        }
    }

    public static void assertFalse(boolean condition) {
        assertTrue(!condition);
    }

    public static void assertNotNull(Object value) {
        if (value == null) {
            throw new AssertionError("expected non-null");
        }
    }

    public static void fail(String message) {
        throw new AssertionError(message);
    }
}
