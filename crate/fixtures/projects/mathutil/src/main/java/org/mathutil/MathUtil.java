package org.mathutil;

public final class MathUtil {
    private MathUtil() {
    }

    public static int clamp(int value, int low, int high) {
        if (value < low) {
            return low;
        }
        return value > high ? high : value;
    }

    public static int zero() {
        return 0;
    }
}
